//! Machine-readable records of a computation and the checks it passed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl Serialize,
        observed: impl Serialize,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected: serde_json::to_value(expected).expect("serializable"),
            observed: serde_json::to_value(observed).expect("serializable"),
            pass,
        }
    }

    /// Passes iff the two values serialize identically.
    pub fn equal(
        name: impl Into<String>,
        expected: impl Serialize,
        observed: impl Serialize,
    ) -> Self {
        let e = serde_json::to_value(expected).expect("serializable");
        let o = serde_json::to_value(observed).expect("serializable");
        let pass = e == o;
        Check {
            name: name.into(),
            expected: e,
            observed: o,
            pass,
        }
    }

    /// `observed >= bound`.
    pub fn at_least(name: impl Into<String>, bound: f64, observed: f64) -> Self {
        Check::new(name, format!(">= {bound}"), observed, observed >= bound)
    }

    /// `observed <= bound`.
    pub fn at_most(name: impl Into<String>, bound: f64, observed: f64) -> Self {
        Check::new(name, format!("<= {bound}"), observed, observed <= bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub operation: String,
    pub input_digest: String,
    pub field: String,
    pub seed: u64,
    pub result: Value,
    pub checks: Vec<Check>,
}

/// SHA-256 of the compact JSON encoding. Object keys are sorted by
/// `serde_json`, so equal inputs give equal digests.
pub fn digest(v: &Value) -> String {
    let text = serde_json::to_string(v).expect("serializable");
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl Certificate {
    pub fn new(operation: &str, input: &Value, field: &FieldSpec, seed: u64) -> Self {
        let d = digest(&json!({
            "operation": operation,
            "input": input,
            "field": field.to_string(),
            "seed": seed,
        }));
        Certificate {
            operation: operation.into(),
            input_digest: d,
            field: field.to_string(),
            seed,
            result: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = result;
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable() {
        let spec: FieldSpec = "fp:101".parse().unwrap();
        let a = Certificate::new("op", &json!({"b": 1, "a": 2}), &spec, 3);
        let b = Certificate::new("op", &json!({"a": 2, "b": 1}), &spec, 3);
        assert_eq!(a.input_digest, b.input_digest);
        let c = Certificate::new("op", &json!({"a": 2, "b": 1}), &spec, 4);
        assert_ne!(a.input_digest, c.input_digest);
        assert_eq!(a.input_digest.len(), 64);
        assert!(a.passed());
    }

    #[test]
    fn check_helpers() {
        assert!(Check::equal("x", [1, 2], vec![1, 2]).pass);
        assert!(!Check::equal("x", 1, 2).pass);
        assert!(Check::at_least("y", 0.9, 0.95).pass);
        assert!(!Check::at_most("z", 6.0, 7.0).pass);
    }
}
