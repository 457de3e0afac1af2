//! Certification suites that bundle the identity checks of `lattice-markov`
//! into named reports, one per claim.

use serde::Serialize;

use lattice_markov::VerificationReport;

mod an;
mod ladder;
pub mod tolerances;

pub use an::an_suite;
pub use ladder::ladder_suite;

/// Named checks from one suite, sorted by name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn new(target: impl Into<String>, mut checks: Vec<VerificationReport>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Self {
            target: target.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&VerificationReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
    }
}
