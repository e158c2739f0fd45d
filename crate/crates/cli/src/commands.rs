use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use luce_core::axioms::{check_axiom, fast, relation_r, Axiom, RelationKind};
use luce_core::feasibility::{exists_regular_logit, fm_feasible, semiorder_rep_system};
use luce_core::json;
use luce_core::lam::{alpha_lam, lam_choice, trivial_lam, TrivialLam};
use luce_core::luce::{
    all_aligned_regular, is_aligned, logit, power_utility, r_extension, regularity_violations,
    uniform, witness_regular_logit,
};
use luce_core::oracle::{verify_theorem, TheoremId, VerifyOptions};
use luce_core::represent::{
    concave_threshold_rep, corollary1_check, semiorder_rep, shape_check, threshold_monotonicity,
    verify_threshold_rep, Shape,
};
use luce_core::welfare::{detect_overload, Classification};
use luce_core::{revealed_relation, ChoiceDataset, Error, Result, Utility};

use crate::{Outcome, RegularityMode, Target};

pub fn load(path: &Path) -> Result<ChoiceDataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    ChoiceDataset::parse(&text)
}

/// Path, alternatives and the SHA-256 of the canonical text, so that
/// reformatting a file leaves the digest unchanged.
fn describe(path: &Path, c: &ChoiceDataset) -> Value {
    let digest = Sha256::digest(c.to_text().as_bytes());
    json!({
        "path": path.display().to_string(),
        "alternatives": c.labels(),
        "partial": c.is_partial(),
        "sha256": hex::encode(digest),
    })
}

fn read_utility(c: &ChoiceDataset, arg: &str) -> Result<Utility> {
    let text = match arg.strip_prefix('@') {
        Some(file) => std::fs::read_to_string(file)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {file}: {e}")))?,
        None => arg.to_string(),
    };
    json::parse_utility(c, &text)
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "pass"
    } else {
        "fail"
    }
}

pub fn axioms(path: &Path) -> Result<Outcome> {
    let c = load(path)?;
    let mut summary = Vec::new();
    let mut axioms = Map::new();
    for axiom in Axiom::ALL {
        let report = check_axiom(&c, axiom)?;
        summary.push(format!("{:<18} {}", axiom.name(), verdict(report.holds)));
        axioms.insert(axiom.name().into(), json::axiom_report_to_json(&c, &report));
    }
    let mut relations = Map::new();
    for (name, kind) in [
        ("R", RelationKind::R),
        ("Q", RelationKind::Q),
        ("S", RelationKind::S),
    ] {
        let rel = revealed_relation(&c, kind)?;
        summary.push(format!(
            "{name:<18} {}",
            if rel.is_acyclic() {
                "acyclic"
            } else {
                "cyclic"
            }
        ));
        relations.insert(name.into(), json::relation_summary(&c, &rel));
    }
    Ok(Outcome {
        dataset: Some(describe(path, &c)),
        result: json!({ "axioms": axioms, "relations": relations }),
        summary,
    })
}

fn evaluate_utility(c: &ChoiceDataset, u: &Utility) -> Result<Value> {
    let violations = regularity_violations(&logit(c, u)?)?;
    Ok(json!({
        "utility": json::utility_to_json(c, u),
        "aligned_with_R": is_aligned(u, &relation_r(c)),
        "regular": violations.is_empty(),
        "violations": json::violations_to_json(c, &violations),
    }))
}

pub fn regularity(path: &Path, mode: RegularityMode, utility: Option<&str>) -> Result<Outcome> {
    let c = load(path)?;
    let mut summary = Vec::new();
    let mut result = match mode {
        RegularityMode::Uniform => {
            let p = uniform(&c);
            let violations = regularity_violations(&p)?;
            summary.push(format!(
                "uniform rule: {} ({} violations)",
                regular_word(violations.is_empty()),
                violations.len()
            ));
            json!({
                "regular": violations.is_empty(),
                "alpha_and_theta": fast::alpha(&c) && fast::theta(&c),
                "probabilities": json::stochastic_choice_to_json(&c, &p),
                "violations": json::violations_to_json(&c, &violations),
            })
        }
        RegularityMode::Exists => {
            let r = relation_r(&c);
            r_extension(&c)?;
            let witness = witness_regular_logit(&c)?;
            // independent route: elimination over R-aligned utilities
            let aligned = exists_regular_logit(&c, Some(&r))?;
            if aligned.result.feasible != witness.is_some() {
                return Err(Error::Inconsistent(format!(
                    "path independence says {} but elimination says {}",
                    witness.is_some(),
                    aligned.result.feasible
                )));
            }
            summary.push(format!(
                "some aligned logit rule is regular: {}",
                if witness.is_some() { "yes" } else { "no" }
            ));
            json!({
                "regular_exists": witness.is_some(),
                "path_independent": fast::path_independence(&c),
                "witness": witness.as_ref().map(|u| json::utility_to_json(&c, u)),
                "feasibility": json::feasibility_to_json(&aligned.system, &aligned.result),
            })
        }
        RegularityMode::All => {
            let res = all_aligned_regular(&c)?;
            let counter = match &res.counterexample {
                Some(u) => Some(evaluate_utility(&c, u)?),
                None => None,
            };
            summary.push(format!(
                "every aligned logit rule is regular: {}",
                if res.holds { "yes" } else { "no" }
            ));
            json!({
                "regular_for_all": res.holds,
                "alpha_and_theta": fast::alpha(&c) && fast::theta(&c),
                "counterexample": counter,
            })
        }
        RegularityMode::Feasibility => {
            let res = exists_regular_logit(&c, None)?;
            summary.push(format!(
                "regular logit rule (any utility): {}",
                if res.result.feasible {
                    "feasible"
                } else {
                    "infeasible"
                }
            ));
            json!({
                "feasible": res.result.feasible,
                "utility": res.utility.as_ref().map(|u| json::utility_to_json(&c, u)),
                "result": json::feasibility_to_json(&res.system, &res.result),
                "system": json::system_to_json(&res.system),
            })
        }
    };
    let mode_name = match mode {
        RegularityMode::Exists => "exists",
        RegularityMode::All => "all",
        RegularityMode::Uniform => "uniform",
        RegularityMode::Feasibility => "feasibility",
    };
    result["mode"] = json!(mode_name);
    if let Some(arg) = utility {
        let u = read_utility(&c, arg)?;
        let eval = evaluate_utility(&c, &u)?;
        summary.push(format!(
            "given utility: {}",
            regular_word(eval["regular"] == true)
        ));
        result["given_utility"] = eval;
    }
    Ok(Outcome {
        dataset: Some(describe(path, &c)),
        result,
        summary,
    })
}

fn regular_word(regular: bool) -> &'static str {
    if regular {
        "regular"
    } else {
        "irregular"
    }
}

pub fn overload(path: &Path, utility: Option<&str>) -> Result<Outcome> {
    let c = load(path)?;
    let u = match utility {
        Some(arg) => read_utility(&c, arg)?,
        None => power_utility(&r_extension(&c)?),
    };
    let report = detect_overload(&c, &u)?;
    let decreasing = report
        .violations
        .iter()
        .filter(|v| v.classification == Classification::WelfareDecreasing)
        .count();
    let summary = vec![format!(
        "choice overload: {} ({} violations, {} welfare decreasing)",
        if report.overload { "yes" } else { "no" },
        report.violations.len(),
        decreasing
    )];
    let mut result = json::overload_report_to_json(&c, &report);
    result["utility"] = json::utility_to_json(&c, &u);
    result["auto_utility"] = json!(utility.is_none());
    result["alpha"] = json!(fast::alpha(&c));
    Ok(Outcome {
        dataset: Some(describe(path, &c)),
        result,
        summary,
    })
}

pub fn represent(path: &Path, target: Target) -> Result<Outcome> {
    let c = load(path)?;
    c.require_total()?;
    let mut summary = Vec::new();
    let result = match target {
        Target::ConcaveThreshold => match concave_threshold_rep(&c)? {
            Some(rep) => {
                summary.push("strongly concave threshold representation found".into());
                json!({
                    "target": "concave-threshold",
                    "found": true,
                    "representation": json::threshold_rep_to_json(&c, &rep.rep),
                    "order": json::order_to_json(&c, &rep.order),
                    "verified": verify_threshold_rep(&c, &rep.rep)?.holds,
                    "strongly_concave": shape_check(&rep.rep.v, &rep.order, Shape::StronglyConcave).holds,
                    "monotonicity": threshold_monotonicity(&rep.rep).name(),
                    "corollary": json::corollary_report_to_json(&c, &corollary1_check(&c, &rep.rep)?),
                })
            }
            None => {
                let reason = if !relation_r(&c).is_acyclic() {
                    "cyclic_R"
                } else {
                    "alpha_violated"
                };
                summary.push(format!("no concave threshold representation ({reason})"));
                json!({ "target": "concave-threshold", "found": false, "reason": reason })
            }
        },
        Target::Semiorder => {
            let sys = semiorder_rep_system(&c)?;
            match semiorder_rep(&c)? {
                Some(rep) => {
                    summary.push("semiorder representation found".into());
                    let eps = rep
                        .eps
                        .get(&c.ground())
                        .cloned()
                        .expect("ground menu has a threshold");
                    json!({
                        "target": "semiorder",
                        "found": true,
                        "representation": json::threshold_rep_to_json(&c, &rep),
                        "threshold": json::rational_value(&eps),
                        "verified": verify_threshold_rep(&c, &rep)?.holds,
                    })
                }
                None => {
                    summary.push("no semiorder representation".into());
                    let res = fm_feasible(&sys)?;
                    json!({
                        "target": "semiorder",
                        "found": false,
                        "feasibility": json::feasibility_to_json(&sys, &res),
                    })
                }
            }
        }
        Target::Lam => {
            let found = trivial_lam(&c)?;
            summary.push(format!("limited attention model: {}", found.reason()));
            let mut out = json!({ "target": "lam", "found": found.lam().is_some(), "reason": found.reason() });
            if let TrivialLam::Found(model) = &found {
                out["model"] = json::lam_to_json(model);
                out["round_trip"] = json!(lam_choice(model) == c);
            } else if let TrivialLam::CyclicR = found {
                // α still yields the indifferent model, outside threshold-Luce scope
                if let Some(model) = alpha_lam(&c)? {
                    out["indifferent_model"] = json::lam_to_json(&model);
                }
            }
            out
        }
    };
    Ok(Outcome {
        dataset: Some(describe(path, &c)),
        result,
        summary,
    })
}

pub fn oracle(
    theorem: &str,
    n: usize,
    exhaustive: bool,
    seed: u64,
    budget: Option<u64>,
) -> Result<Outcome> {
    let ids: Vec<TheoremId> = if theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![theorem.parse()?]
    };
    let opts = VerifyOptions {
        exhaustive,
        budget,
        seed,
    };
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    let mut passed = true;
    for id in ids {
        let r = verify_theorem(id, n, opts)?;
        summary.push(format!(
            "{:<18} n={} {} checked={} counterexamples={} {:.2}s",
            id.name(),
            n,
            if r.sampled { "sampled" } else { "exhaustive" },
            r.instances_checked,
            r.counterexample_count,
            r.elapsed.as_secs_f64()
        ));
        passed &= r.passed();
        reports.push(json::verification_report_to_json(&r));
    }
    Ok(Outcome {
        dataset: None,
        result: json!({ "passed": passed, "reports": reports }),
        summary,
    })
}
