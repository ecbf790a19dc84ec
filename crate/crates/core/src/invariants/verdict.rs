//! Results of the detectors and checks.

use std::fmt;

use super::growth::GrowthClassification;
use crate::betti::BettiTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Inconclusive => "INCONCLUSIVE",
            Outcome::Fail => "FAIL",
        })
    }
}

/// A finite certificate of failure: where it happened and what was violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: i64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    Betti { object: String, table: BettiTable },
    Growth { object: String, growth: GrowthClassification },
    Values { name: String, values: Vec<String> },
    Text { name: String, value: String },
}

impl Evidence {
    pub fn values<T: ToString>(name: &str, values: impl IntoIterator<Item = T>) -> Self {
        Evidence::Values {
            name: name.into(),
            values: values.into_iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn text(name: &str, value: impl ToString) -> Self {
        Evidence::Text {
            name: name.into(),
            value: value.to_string(),
        }
    }
}

/// Outcome of a detector. `label` is the detector-specific verdict
/// (`REGULAR_MAP`, `G_DIM_AT_MOST(0)`, …); `outcome` says whether the check
/// held, failed with a witness, or could not be decided in the window.
#[derive(Clone, Debug, PartialEq)]
pub struct TestVerdict {
    pub claim: String,
    pub outcome: Outcome,
    pub label: String,
    pub evidence: Vec<Evidence>,
    pub witness: Option<Witness>,
    pub cutoffs: Vec<(String, i64)>,
}

impl TestVerdict {
    pub fn new(claim: &str, outcome: Outcome, label: impl Into<String>) -> Self {
        TestVerdict {
            claim: claim.into(),
            outcome,
            label: label.into(),
            evidence: Vec::new(),
            witness: None,
            cutoffs: Vec::new(),
        }
    }

    pub fn pass(claim: &str, label: impl Into<String>) -> Self {
        Self::new(claim, Outcome::Pass, label)
    }

    pub fn inconclusive(claim: &str, reason: impl ToString) -> Self {
        Self::new(claim, Outcome::Inconclusive, "INCONCLUSIVE").with(Evidence::text("reason", reason))
    }

    pub fn fail(claim: &str, label: impl Into<String>, witness: Witness) -> Self {
        let mut v = Self::new(claim, Outcome::Fail, label);
        v.witness = Some(witness);
        v
    }

    pub fn with(mut self, e: Evidence) -> Self {
        self.evidence.push(e);
        self
    }

    pub fn with_cutoff(mut self, name: &str, value: i64) -> Self {
        self.cutoffs.push((name.into(), value));
        self
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for TestVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.claim, self.label, self.outcome)?;
        if let Some(w) = &self.witness {
            write!(f, " at {}: {}", w.index, w.detail)?;
        }
        Ok(())
    }
}
