//! Per-axiom verification reports shared by the verifiers.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub status: Status,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Accumulates samples for one axiom, keeping the first counterexample.
pub(crate) struct Tally {
    axiom: String,
    samples: usize,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn new(axiom: &str) -> Tally {
        Tally {
            axiom: axiom.to_string(),
            samples: 0,
            witness: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> AxiomCheck {
        AxiomCheck {
            status: if self.witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            axiom: self.axiom,
            samples: self.samples,
            witness: self.witness,
        }
    }
}
