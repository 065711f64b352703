//! Pass/fail reports shared by the validation and verification routines.

use serde::Serialize;

/// Outcome of a structural validation (algebra axioms, intertwining, ...).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }
}

/// One checked axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub axiom: String,
    pub degree: usize,
    pub passed: bool,
    /// Number of instances evaluated.
    pub instances: usize,
    /// First failing instance with its nonzero residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Ordered list of axiom checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, o: VerificationReport) {
        self.entries.extend(o.entries);
    }

    pub fn get(&self, axiom: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

/// Accumulates instances of one axiom and keeps the first counterexample.
#[derive(Debug)]
pub struct Tally {
    axiom: String,
    degree: usize,
    instances: usize,
    witness: Option<String>,
}

impl Tally {
    pub fn new(axiom: &str, degree: usize) -> Tally {
        Tally { axiom: axiom.to_string(), degree, instances: 0, witness: None }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, o: Tally) {
        self.instances += o.instances;
        if self.witness.is_none() {
            self.witness = o.witness;
        }
    }

    pub fn finish(self) -> CheckEntry {
        CheckEntry {
            axiom: self.axiom,
            degree: self.degree,
            passed: self.witness.is_none(),
            instances: self.instances,
            witness: self.witness,
        }
    }
}
