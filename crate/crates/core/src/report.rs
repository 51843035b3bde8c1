//! Pass/fail records for identity checks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Result;
use crate::qscalar::BackendTag;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The identity cannot be evaluated on this backend (for example a
    /// value outside the exact ring); not counted as a failure.
    Skipped(String),
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub identity: String,
    pub backend: BackendTag,
    pub max_residual: f64,
    pub tolerance: f64,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

impl Check {
    /// Exact backends pass only on a residual of exactly zero.
    pub fn from_residual(identity: impl Into<String>, backend: BackendTag, residual: f64, tolerance: f64) -> Self {
        let tolerance = match backend {
            BackendTag::Exact => 0.0,
            BackendTag::Numeric(_) => tolerance,
        };
        let outcome = if residual <= tolerance {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        Self {
            identity: identity.into(),
            backend,
            max_residual: residual,
            tolerance,
            outcome,
            detail: None,
        }
    }

    /// Errors while computing the residual count as failures.
    pub fn from_result(identity: impl Into<String>, backend: BackendTag, residual: Result<f64>, tolerance: f64) -> Self {
        match residual {
            Ok(r) => Self::from_residual(identity, backend, r, tolerance),
            Err(e) => Self {
                identity: identity.into(),
                backend,
                max_residual: f64::INFINITY,
                tolerance,
                outcome: Outcome::Fail,
                detail: Some(e.to_string()),
            },
        }
    }

    pub fn boolean(identity: impl Into<String>, backend: BackendTag, ok: bool, detail: Option<String>) -> Self {
        Self {
            identity: identity.into(),
            backend,
            max_residual: if ok { 0.0 } else { f64::INFINITY },
            tolerance: 0.0,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail,
        }
    }

    pub fn skipped(identity: impl Into<String>, backend: BackendTag, reason: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            backend,
            max_residual: 0.0,
            tolerance: 0.0,
            outcome: Outcome::Skipped(reason.into()),
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail)
    }

    pub fn q_values(&self) -> Vec<f64> {
        match self.backend {
            BackendTag::Exact => Vec::new(),
            BackendTag::Numeric(q) => alloc::vec![q],
        }
    }
}

/// Ordered collection of checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| !matches!(c.outcome, Outcome::Skipped(_)))
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    /// Sort by identity name, then backend, for reproducible output.
    pub fn canonicalize(&mut self) {
        self.checks.sort_by(|a, b| {
            a.identity
                .cmp(&b.identity)
                .then_with(|| backend_key(a.backend).total_cmp(&backend_key(b.backend)))
        });
    }
}

fn backend_key(tag: BackendTag) -> f64 {
    match tag {
        BackendTag::Exact => -1.0,
        BackendTag::Numeric(q) => q,
    }
}

impl FromIterator<Check> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Self {
            checks: iter.into_iter().collect(),
        }
    }
}
