//! Residual bookkeeping shared by the verification reports.

use serde::Serialize;

/// A single named identity check: the maximal violation observed and the
/// tolerance it is judged against.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Residual {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value.is_finite() && value < tolerance,
        }
    }
}

/// Ordered list of residuals with a pass verdict.
#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<Residual>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Residual::new(name, value, tolerance));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|r| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.checks.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.checks.iter().filter(|r| !r.pass)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }
}
