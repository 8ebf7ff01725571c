//! Executable versions of the constructive proof steps. Each check runs on
//! concrete input and reports pass/fail with a counterexample payload.

mod branching;
mod checks;
mod critical;
pub mod sample;
mod separation;
mod support;

use serde::Serialize;

use crate::family::SetFamily;

pub use branching::{run_branching, run_branching_with, verify_branching_cover, BranchChoice, BranchNode, BranchingRun};
pub use checks::{
    verify_delta_k_classification, verify_link_degree, verify_no_sunflower_3_1, verify_tau_ge_delta, CLASSIFICATION_MAX_SETS,
};
pub use critical::{audit_union_bounds, is_critical, reduce_to_critical};
pub use separation::{
    separating_permutations, verify_no_double_separation, verify_separation_count, SeparationInstance,
    SeparationPair, SEPARATION_MAX_N,
};
pub use support::{minimal_support, verify_minimal_support, SupportReport, SupportWitness, SUPPORT_MAX_UNION};

/// Outcome of a named verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub passed: bool,
    pub summary: String,
    /// Offending sets, when the failure is witnessed by a family.
    pub counterexample: Option<SetFamily>,
    /// Offending permutation of `[n]`, for separation checks.
    pub permutation: Option<Vec<usize>>,
    pub details: Vec<String>,
}

impl CheckReport {
    pub(crate) fn pass(check: &'static str, summary: impl Into<String>) -> Self {
        CheckReport { check, passed: true, summary: summary.into(), counterexample: None, permutation: None, details: Vec::new() }
    }

    pub(crate) fn fail(check: &'static str, summary: impl Into<String>) -> Self {
        CheckReport { passed: false, ..CheckReport::pass(check, summary) }
    }

    pub(crate) fn with_counterexample(mut self, fam: SetFamily) -> Self {
        self.counterexample = Some(fam);
        self
    }

    pub(crate) fn with_details(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}
