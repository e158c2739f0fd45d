use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use luce_core::json;
use luce_core::lam::lam_choice;
use luce_core::luce::{logit, regularity_violations};
use luce_core::represent::verify_threshold_rep;
use luce_core::welfare::welfare_value;
use luce_core::ChoiceDataset;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn dataset(name: &str) -> ChoiceDataset {
    ChoiceDataset::parse(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

/// Runs `luce` and returns (exit code, parsed stdout, raw stdout).
fn luce(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_luce"))
        .args(args)
        .output()
        .unwrap();
    let raw = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&raw).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, raw)
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn axioms_on_the_examples() {
    let (code, r, _) = luce(&["axioms", &path("example1.txt")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["axioms"]["theta"]["holds"], false);
    assert_eq!(r["result"]["axioms"]["alpha"]["holds"], true);

    let (_, r, _) = luce(&["axioms", &path("example2.txt")]);
    assert_eq!(r["result"]["axioms"]["gamma"]["holds"], false);
    assert_eq!(r["result"]["axioms"]["gamma"]["witnesses"][0]["x"], "z");
    assert_eq!(r["result"]["relations"]["R"]["acyclic"], false);

    let (_, r, _) = luce(&["axioms", &path("singleton.txt")]);
    for (_, report) in r["result"]["axioms"].as_object().unwrap() {
        assert_eq!(report["holds"], true);
    }
}

#[test]
fn regularity_modes() {
    let (code, r, _) = luce(&["regularity", &path("appendix.txt"), "--mode", "feasibility"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["feasible"], false);
    assert_eq!(r["result"]["result"]["certificate"]["replays"], true);

    let (_, r, _) = luce(&["regularity", &path("example2.txt"), "--mode", "uniform"]);
    assert_eq!(r["result"]["regular"], true);

    let (_, r, _) = luce(&["regularity", &path("semiorder.txt"), "--mode", "all"]);
    assert_eq!(r["result"]["regular_for_all"], true);

    let (_, r, _) = luce(&["regularity", &path("semiorder.txt"), "--mode", "exists"]);
    let c = dataset("semiorder.txt");
    let u = json::utility_from_json(&c, &r["result"]["witness"]).unwrap();
    assert!(regularity_violations(&logit(&c, &u).unwrap())
        .unwrap()
        .is_empty());
}

#[test]
fn aligned_modes_need_acyclic_r() {
    let (code, r, _) = luce(&["regularity", &path("example2.txt"), "--mode", "exists"]);
    assert_eq!(code, 3);
    assert!(r["error"]["message"].as_str().unwrap().contains("cyclic"));
}

#[test]
fn given_utility_is_evaluated() {
    let (_, r, _) = luce(&[
        "regularity",
        &path("example1.txt"),
        "--mode",
        "uniform",
        "--utility",
        r#"{"x":"1","y":"1","z":"1","w":"1","t":"1"}"#,
    ]);
    assert_eq!(r["result"]["given_utility"]["regular"], false);
}

#[test]
fn overload_verdicts() {
    let (code, r, _) = luce(&["overload", &path("alpha_violation.txt"), "--auto"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["overload"], true);
    let c = dataset("alpha_violation.txt");
    let mut witnessed = 0;
    for v in r["result"]["violations"].as_array().unwrap() {
        if v["classification"] == "welfare_decreasing" {
            let w = json::utility_from_json(&c, &v["witness_utility"]).unwrap();
            let a = c.parse_menu(v["A"].as_str().unwrap()).unwrap();
            let b = c.parse_menu(v["B"].as_str().unwrap()).unwrap();
            assert!(welfare_value(&c, &w, a) > welfare_value(&c, &w, b));
            witnessed += 1;
        }
    }
    assert!(witnessed > 0);

    let (_, r, _) = luce(&[
        "overload",
        &path("maximizer.txt"),
        "--utility",
        r#"{"x":"3","y":"2","z":"1"}"#,
    ]);
    assert_eq!(r["result"]["overload"], false);

    let (_, r, _) = luce(&["overload", &path("outcast.txt"), "--auto"]);
    assert_eq!(r["result"]["overload"], false);
    let violations = r["result"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert!(violations
        .iter()
        .all(|v| v["classification"] == "welfare_increasing"));
}

#[test]
fn misaligned_utility_is_a_precondition_failure() {
    let (code, _, _) = luce(&[
        "overload",
        &path("maximizer.txt"),
        "--utility",
        r#"{"x":"1","y":"2","z":"3"}"#,
    ]);
    assert_eq!(code, 3);
}

#[test]
fn representations_round_trip() {
    let c = dataset("semiorder.txt");
    for target in ["concave-threshold", "semiorder"] {
        let (code, r, _) = luce(&["represent", &path("semiorder.txt"), "--target", target]);
        assert_eq!(code, 0, "{target}");
        assert_eq!(r["result"]["found"], true);
        let rep = json::threshold_rep_from_json(&c, &r["result"]["representation"]).unwrap();
        assert!(verify_threshold_rep(&c, &rep).unwrap().holds, "{target}");
    }
    let (_, r, _) = luce(&["represent", &path("semiorder.txt"), "--target", "lam"]);
    let model = json::lam_from_json(c.labels().to_vec(), &r["result"]["model"]).unwrap();
    assert_eq!(lam_choice(&model), c);

    let (_, r, _) = luce(&["represent", &path("example2.txt"), "--target", "lam"]);
    assert_eq!(r["result"]["reason"], "cyclic_R");
    let (_, r, _) = luce(&[
        "represent",
        &path("alpha_violation.txt"),
        "--target",
        "concave-threshold",
    ]);
    assert_eq!(r["result"]["found"], false);
    assert_eq!(r["result"]["reason"], "alpha_violated");
    let (_, r, _) = luce(&["represent", &path("example2.txt"), "--target", "semiorder"]);
    assert_eq!(r["result"]["found"], false);
    assert_eq!(r["result"]["feasibility"]["certificate"]["replays"], true);
}

#[test]
fn oracle_runs() {
    let (code, r, _) = luce(&["oracle", "--theorem", "P1_uniform", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["reports"][0]["instances_checked"], 189);
    assert_eq!(r["result"]["reports"][0]["counterexample_count"], 0);
    for id in ["T4", "T2"] {
        let (_, r, _) = luce(&["oracle", "--theorem", id, "--n", "3", "--assert", "passed"]);
        assert_eq!(r["exit_code"], 0, "{id}");
    }
    let (_, r, _) = luce(&[
        "oracle",
        "--theorem",
        "T1",
        "--n",
        "4",
        "--budget",
        "200",
        "--seed",
        "5",
    ]);
    assert_eq!(r["result"]["reports"][0]["mode"], "sampled");
    assert_eq!(r["result"]["reports"][0]["seed"], 5);
}

#[test]
fn exit_codes() {
    let (code, _, _) = luce(&[
        "axioms",
        &path("example1.txt"),
        "--assert",
        "axioms.theta.holds",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = luce(&["axioms", &path("example1.txt"), "--assert", "no.such.field"]);
    assert_eq!(code, 2);
    let (code, _, _) = luce(&["axioms", "/nonexistent/file.txt"]);
    assert_eq!(code, 2);
    let (code, _, _) = luce(&["oracle", "--theorem", "T9"]);
    assert_eq!(code, 2);
    let (code, _, _) = luce(&["oracle", "--theorem", "T1", "--n", "5", "--exhaustive"]);
    assert_eq!(code, 3);
}

#[test]
fn digest_ignores_formatting_and_keys_are_sorted() {
    let out = Command::new(env!("CARGO_BIN_EXE_luce"))
        .args(["fmt", &path("outcast.txt")])
        .output()
        .unwrap();
    let canonical = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        ChoiceDataset::parse(&canonical).unwrap(),
        dataset("outcast.txt")
    );
    let copy = std::env::temp_dir().join(format!("luce-fmt-{}.txt", std::process::id()));
    std::fs::write(&copy, &canonical).unwrap();

    let (_, a, raw) = luce(&["axioms", &path("outcast.txt")]);
    let (_, b, _) = luce(&["axioms", copy.to_str().unwrap()]);
    std::fs::remove_file(&copy).ok();
    assert_eq!(a["dataset"]["sha256"], b["dataset"]["sha256"]);

    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| raw.find(&format!("\n  \"{k}\"")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
