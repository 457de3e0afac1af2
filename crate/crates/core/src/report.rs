use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of one certification run: named residuals checked against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub residuals: BTreeMap<String, f64>,
    pub tol: f64,
    pub pass: bool,
    /// Informational booleans that do not affect `pass`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            residuals: BTreeMap::new(),
            tol,
            pass: true,
            flags: BTreeMap::new(),
        }
    }

    /// Records a residual that must stay below `tol`.
    pub fn check_below(&mut self, label: &str, value: f64) -> &mut Self {
        self.residuals.insert(label.to_string(), value);
        if !(value < self.tol) {
            self.pass = false;
        }
        self
    }

    /// Records a residual that must stay below its own `bound`.
    pub fn check_within(&mut self, label: &str, value: f64, bound: f64) -> &mut Self {
        self.residuals.insert(label.to_string(), value);
        if !(value < bound) {
            self.pass = false;
        }
        self
    }

    /// Records a value without affecting the verdict.
    pub fn record(&mut self, label: &str, value: f64) -> &mut Self {
        self.residuals.insert(label.to_string(), value);
        self
    }

    pub fn require(&mut self, ok: bool) -> &mut Self {
        self.pass &= ok;
        self
    }

    pub fn flag(&mut self, label: &str, value: bool) -> &mut Self {
        self.flags.insert(label.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
