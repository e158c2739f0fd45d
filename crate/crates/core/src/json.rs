//! JSON forms of utilities, representations, models and reports.
//!
//! Rationals are strings `"num/den"`; menus are keys `"{a,b}"`. Objects are
//! `serde_json` maps, whose keys serialize in sorted order.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::axioms::{AxiomReport, Witness};
use crate::dataset::ChoiceDataset;
use crate::error::{Error, Result};
use crate::feasibility::{Certificate, FeasibilityResult, LinearSystem};
use crate::lam::{Lam, LamOverloadReport, WeakOrder};
use crate::luce::{RegularityViolation, StochasticChoice, Utility};
use crate::menu::{Alternative, Menu};
use crate::rational::{self, Rational};
use crate::relation::{LinearOrder, Relation};
use crate::represent::{CorollaryReport, ThresholdRep};
use crate::welfare::OverloadReport;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn rational_value(q: &Rational) -> Value {
    Value::String(rational::format(q))
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap_or_default())),
        _ => Err(bad(format!("expected a rational string, found {v}"))),
    }
}

fn labels_of(c: &ChoiceDataset, menu: Menu) -> Value {
    Value::Array(
        menu.members()
            .map(|a| Value::String(c.label(a).to_string()))
            .collect(),
    )
}

fn label_list(c: &ChoiceDataset, v: &Value) -> Result<Menu> {
    let items = v
        .as_array()
        .ok_or_else(|| bad("expected a list of labels"))?;
    items.iter().try_fold(Menu::EMPTY, |m, item| {
        let name = item.as_str().ok_or_else(|| bad("labels must be strings"))?;
        let a = c
            .find(name)
            .ok_or_else(|| Error::InvalidLabel(name.to_string()))?;
        Ok(m.with(a))
    })
}

fn order_value(c: &ChoiceDataset, order: &LinearOrder) -> Value {
    Value::Array(
        order
            .descending()
            .iter()
            .map(|a| Value::String(c.label(*a).to_string()))
            .collect(),
    )
}

pub fn relation_pairs(c: &ChoiceDataset, rel: &Relation) -> Value {
    Value::Array(
        rel.pairs()
            .into_iter()
            .map(|(x, y)| json!([c.label(x), c.label(y)]))
            .collect(),
    )
}

/// Acyclicity, pairs and (when cyclic) one cycle of `rel`.
pub fn relation_summary(c: &ChoiceDataset, rel: &Relation) -> Value {
    let cycle = rel.find_cycle().map(|cy| {
        cy.iter()
            .map(|a| c.label(*a).to_string())
            .collect::<Vec<_>>()
    });
    json!({ "acyclic": cycle.is_none(), "pairs": relation_pairs(c, rel), "cycle": cycle })
}

pub fn violations_to_json(c: &ChoiceDataset, violations: &[RegularityViolation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| json!({ "x": c.label(v.x), "A": c.format_menu(v.a), "B": c.format_menu(v.b) }))
            .collect(),
    )
}

/// `{label: "n/d"}`.
pub fn utility_to_json(c: &ChoiceDataset, u: &Utility) -> Value {
    let mut map = Map::new();
    for a in c.alternatives() {
        map.insert(c.label(a).to_string(), rational_value(u.get(a)));
    }
    Value::Object(map)
}

/// Inverse of [`utility_to_json`]; every label must be present.
pub fn utility_from_json(c: &ChoiceDataset, v: &Value) -> Result<Utility> {
    let map = v
        .as_object()
        .ok_or_else(|| bad("utility must be an object"))?;
    for key in map.keys() {
        if c.find(key).is_none() {
            return Err(Error::InvalidLabel(key.clone()));
        }
    }
    let values = c
        .labels()
        .iter()
        .map(|l| {
            map.get(l)
                .ok_or_else(|| bad(format!("utility has no value for {l}")))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    Utility::for_dataset(c, values)
}

pub fn parse_utility(c: &ChoiceDataset, text: &str) -> Result<Utility> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    utility_from_json(c, &v)
}

/// `{"v": {label: "n/d"}, "eps": {"{a,b}": "n/d"}}`.
pub fn threshold_rep_to_json(c: &ChoiceDataset, rep: &ThresholdRep) -> Value {
    let eps: Map<String, Value> = rep
        .eps
        .iter()
        .map(|(m, e)| (c.format_menu(*m), rational_value(e)))
        .collect();
    json!({ "v": utility_to_json(c, &rep.v), "eps": eps })
}

pub fn threshold_rep_from_json(c: &ChoiceDataset, v: &Value) -> Result<ThresholdRep> {
    let util = utility_from_json(c, v.get("v").ok_or_else(|| bad("missing \"v\""))?)?;
    let eps_map = v
        .get("eps")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"eps\" object"))?;
    let mut eps = BTreeMap::new();
    for (key, val) in eps_map {
        eps.insert(c.parse_menu(key)?, parse_rational(val)?);
    }
    Ok(ThresholdRep { v: util, eps })
}

/// `{"classes": [[best labels], …], "consideration": {"{a,b}": [labels]}}`.
pub fn lam_to_json(model: &Lam) -> Value {
    let gamma = model.consideration();
    let classes: Vec<Value> = model
        .weak_order()
        .classes()
        .iter()
        .map(|m| labels_of(gamma, *m))
        .collect();
    let consideration: Map<String, Value> = gamma
        .canonical_menu_order()
        .into_iter()
        .map(|m| (gamma.format_menu(m), labels_of(gamma, gamma.c(m))))
        .collect();
    json!({ "classes": classes, "consideration": consideration })
}

/// Inverse of [`lam_to_json`]; singleton menus may be omitted.
pub fn lam_from_json(labels: Vec<String>, v: &Value) -> Result<Lam> {
    let n = labels.len();
    // a scaffold dataset for label and menu parsing
    let scaffold = ChoiceDataset::from_fn(labels.clone(), |m| m)?;
    let classes = v
        .get("classes")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"classes\" list"))?
        .iter()
        .map(|c| label_list(&scaffold, c))
        .collect::<Result<Vec<_>>>()?;
    let order = WeakOrder::from_classes(n, classes)?;
    let map = v
        .get("consideration")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing \"consideration\" object"))?;
    let mut pairs = Vec::new();
    for (key, val) in map {
        let menu = scaffold.parse_menu(key)?;
        let considered = label_list(&scaffold, val)?;
        if considered.is_empty() {
            return Err(Error::EmptyConsideration { menu: key.clone() });
        }
        pairs.push((menu, considered));
    }
    let gamma = ChoiceDataset::from_pairs(labels, pairs, false)?;
    Lam::new(order, gamma)
}

fn witness_to_json(c: &ChoiceDataset, w: &Witness) -> Value {
    let mut map = Map::new();
    map.insert("A".into(), Value::String(c.format_menu(w.a)));
    if let Some(b) = w.b {
        map.insert("B".into(), Value::String(c.format_menu(b)));
    }
    if let Some(x) = w.x {
        map.insert("x".into(), Value::String(c.label(x).to_string()));
    }
    if let Some(y) = w.y {
        map.insert("y".into(), Value::String(c.label(y).to_string()));
    }
    Value::Object(map)
}

pub fn axiom_report_to_json(c: &ChoiceDataset, r: &AxiomReport) -> Value {
    json!({
        "holds": r.holds,
        "violation_count": r.violation_count,
        "witnesses": r.witnesses.iter().map(|w| witness_to_json(c, w)).collect::<Vec<_>>(),
    })
}

/// `{"{a,b}": {label: "n/d"}}` over the menus where the rule is defined.
pub fn stochastic_choice_to_json(c: &ChoiceDataset, p: &StochasticChoice) -> Value {
    let map: Map<String, Value> = p
        .menus()
        .map(|m| {
            let dist: Map<String, Value> = p
                .distribution(m)
                .into_iter()
                .map(|(a, q)| (c.label(a).to_string(), rational_value(&q)))
                .collect();
            (c.format_menu(m), Value::Object(dist))
        })
        .collect();
    Value::Object(map)
}

pub fn system_to_json(sys: &LinearSystem) -> Value {
    json!({
        "variables": sys.variables,
        "constraints": sys.constraints.iter().map(|k| {
            json!({
                "label": k.label,
                "coeffs": k.coeffs.iter().map(rational_value).collect::<Vec<_>>(),
                "cmp": k.cmp.symbol(),
                "rhs": rational_value(&k.rhs),
            })
        }).collect::<Vec<_>>(),
        "sentinel": sys.sentinel,
    })
}

pub fn certificate_to_json(sys: &LinearSystem, cert: &Certificate) -> Value {
    json!({
        "elimination_order": cert.elimination_order.iter().map(|&i| sys.variables[i].clone()).collect::<Vec<_>>(),
        "multipliers": cert.multipliers.iter().map(|(row, m)| {
            json!({ "constraint": sys.constraints[*row].label, "row": row, "multiplier": rational_value(m) })
        }).collect::<Vec<_>>(),
        "replays": cert.replay(sys),
    })
}

pub fn feasibility_to_json(sys: &LinearSystem, res: &FeasibilityResult) -> Value {
    let sample = res.sample.as_ref().map(|s| {
        sys.variables
            .iter()
            .zip(s)
            .map(|(name, q)| (name.clone(), rational_value(q)))
            .collect::<Map<String, Value>>()
    });
    json!({
        "feasible": res.feasible,
        "sample": sample,
        "certificate": res.certificate.as_ref().map(|cert| certificate_to_json(sys, cert)),
    })
}

pub fn overload_report_to_json(c: &ChoiceDataset, r: &OverloadReport) -> Value {
    json!({
        "overload": r.overload,
        "violations": r.violations.iter().map(|v| {
            json!({
                "x": c.label(v.x),
                "A": c.format_menu(v.a),
                "B": c.format_menu(v.b),
                "classification": v.classification.name(),
                "witness_utility": v.witness_utility.as_ref().map(|u| utility_to_json(c, u)),
                "witness_order": v.witness_order.as_ref().map(|o| order_value(c, o)),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn lam_overload_report_to_json(r: &LamOverloadReport) -> Value {
    let c = &r.choice;
    json!({
        "mode": match r.mode {
            crate::lam::WelfareMode::Agreeing => "agreeing",
            crate::lam::WelfareMode::Representing => "representing",
        },
        "branch": r.branch.name(),
        "welfare_relation": r.relation.name(),
        "alpha": r.alpha,
        "choice": c.to_text(),
        "report": overload_report_to_json(c, &r.report),
    })
}

pub fn corollary_report_to_json(c: &ChoiceDataset, r: &CorollaryReport) -> Value {
    json!({
        "holds": r.holds(),
        "alpha_pairs": r.alpha_pairs,
        "outcast_pairs": r.outcast_pairs,
        "failures": r.failures.iter().map(|f| json!({
            "clause": format!("{:?}", f.clause),
            "A": c.format_menu(f.a),
            "B": c.format_menu(f.b),
        })).collect::<Vec<_>>(),
    })
}

pub fn verification_report_to_json(r: &crate::oracle::VerificationReport) -> Value {
    json!({
        "theorem": r.theorem.name(),
        "statement": r.theorem.statement(),
        "n": r.n,
        "mode": if r.sampled { "sampled" } else { "exhaustive" },
        "seed": r.seed,
        "universe_size": r.universe_size,
        "instances_checked": r.instances_checked,
        "counterexample_count": r.counterexample_count,
        "counterexamples": r.counterexamples.iter().map(|cx| json!({
            "instance": cx.instance,
            "detail": cx.detail,
        })).collect::<Vec<_>>(),
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "passed": r.passed(),
    })
}

pub fn order_to_json(c: &ChoiceDataset, order: &LinearOrder) -> Value {
    order_value(c, order)
}

pub fn alternative_label(c: &ChoiceDataset, a: Alternative) -> Value {
    Value::String(c.label(a).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lam::lam_choice;
    use crate::represent::{concave_threshold_rep, verify_threshold_rep};

    fn data() -> ChoiceDataset {
        ChoiceDataset::parse(
            "alternatives: x y z
             {x,y,z} -> {x}
             {x,y} -> {x,y}
             {x,z} -> {x}
             {y,z} -> {y}",
        )
        .unwrap()
    }

    #[test]
    fn utility_round_trip() {
        let c = data();
        let u = Utility::new(vec![
            rational::ratio(1, 3),
            rational::int(2),
            rational::ratio(7, 5),
        ])
        .unwrap();
        let v = utility_to_json(&c, &u);
        assert_eq!(v.to_string(), r#"{"x":"1/3","y":"2/1","z":"7/5"}"#);
        assert_eq!(utility_from_json(&c, &v).unwrap(), u);
        assert!(parse_utility(&c, r#"{"x":"1","y":"0","z":"1"}"#).is_err());
        assert!(parse_utility(&c, r#"{"x":"1","y":"1"}"#).is_err());
        assert!(parse_utility(&c, r#"{"x":"1","y":"1","z":"1","q":"1"}"#).is_err());
    }

    #[test]
    fn threshold_rep_round_trip() {
        let c = data();
        let rep = concave_threshold_rep(&c).unwrap().unwrap().rep;
        let v = threshold_rep_to_json(&c, &rep);
        let back =
            threshold_rep_from_json(&c, &serde_json::from_str(&v.to_string()).unwrap()).unwrap();
        assert_eq!(back, rep);
        assert!(verify_threshold_rep(&c, &back).unwrap().holds);
    }

    #[test]
    fn lam_round_trip() {
        let c = data();
        let model = crate::lam::trivial_lam(&c).unwrap().lam().unwrap().clone();
        let v = lam_to_json(&model);
        let back = lam_from_json(c.labels().to_vec(), &v).unwrap();
        assert_eq!(back, model);
        assert_eq!(lam_choice(&back), c);
        let bad = json!({"classes": [["x","y","z"]], "consideration": {"{x,y}": []}});
        assert!(matches!(
            lam_from_json(c.labels().to_vec(), &bad),
            Err(Error::EmptyConsideration { .. })
        ));
    }
}
