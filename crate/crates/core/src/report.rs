//! Margin reports returned by the inequality audits.

use serde::{Deserialize, Serialize};

/// One side-by-side reading of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MarginReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl MarginReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> MarginReport {
        MarginReport { name: name.into(), lhs, rhs, slack: rhs - lhs }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}
