use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Structured payload backing a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vector { values: Vec<f64> },
    Indices { indices: Vec<usize> },
    Eigenvalue { value: f64 },
    /// Exact elimination pivot, printed as a fraction.
    Pivot { index: usize, value: String },
    /// Equality case of the negative-clique bound.
    Simplex { confirmed: bool, max_deviation: f64 },
}

/// A pass/fail verdict for one inequality `lhs <= rhs` (up to `tolerance`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    /// Name of the result the check comes from.
    pub anchor: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measurements: BTreeMap<String, f64>,
}

impl Certificate {
    /// Builds a certificate whose verdict is `lhs <= rhs + tolerance`.
    pub fn inequality(name: &str, anchor: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Certificate {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: lhs <= rhs + tolerance,
            lhs,
            rhs,
            margin: rhs - lhs,
            tolerance,
            witness: None,
            measurements: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn measure(mut self, key: &str, value: f64) -> Self {
        self.measurements.insert(key.to_string(), value);
        self
    }

    /// Conjoins an extra requirement that is not captured by `lhs <= rhs`.
    pub fn require(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_inequality() {
        assert!(Certificate::inequality("x", "a", 1.0, 1.0, 0.0).pass);
        assert!(!Certificate::inequality("x", "a", 1.1, 1.0, 0.05).pass);
        let c = Certificate::inequality("x", "a", 2.0, 3.0, 0.0).require(false);
        assert!(!c.pass);
        assert_eq!(c.margin, 1.0);
    }
}
