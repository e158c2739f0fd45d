//! `--assert path[=value]` gates over the `result` object.

use serde_json::{json, Value};

pub struct Check {
    pub check: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        })
    }
}

/// Dotted path lookup; numeric segments index arrays.
fn lookup<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |v, seg| match v {
        Value::Object(map) => map.get(seg),
        Value::Array(items) => seg.parse::<usize>().ok().and_then(|i| items.get(i)),
        _ => None,
    })
}

pub fn evaluate(result: &Value, specs: &[String]) -> Result<Vec<Check>, String> {
    specs
        .iter()
        .map(|spec| {
            let (path, expected) = match spec.split_once('=') {
                // bare words compare as strings
                Some((p, raw)) => (
                    p,
                    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string())),
                ),
                None => (spec.as_str(), Value::Bool(true)),
            };
            let actual = lookup(result, path)
                .ok_or_else(|| format!("--assert {spec}: no field {path:?} in the report"))?;
            Ok(Check {
                check: spec.clone(),
                passed: *actual == expected,
                expected,
                actual: actual.clone(),
            })
        })
        .collect()
}
