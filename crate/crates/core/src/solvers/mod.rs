//! Exact deciders: the brute-force oracle, the formula solvers and the fast
//! algorithms for the degree, gap and maximum rules.

mod brute;
mod degree;
mod gap;
mod nae;
mod tsv;
mod twosat;

use serde::Serialize;
use thiserror::Error;

use crate::formula::FormulaError;
use crate::semantics::{Labeling, LabelingError};

pub use brute::{brute_force_decide, brute_force_decide_with_budget, BruteForce, DEFAULT_BUDGET};
pub use degree::{degree_formula, degree_label_from_2};
pub use gap::{
    edge_gap_planar_bipartite, gap_formula, vertex_gap_algorithm1, vertex_gap_algorithm1_report, Algorithm1Report, ComponentRoute,
};
pub use nae::{solve_nae, solve_nae_with_budget, wide_nae_to_3nae};
pub use tsv::{is_tsv, tsv_find, tsv_find_with_order, TsvResult};
pub use twosat::solve_2sat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Twosat,
    NaeAlgorithm1,
    NaeEdgeGap,
    Construction,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Twosat => "twosat",
            Method::NaeAlgorithm1 => "nae-algorithm1",
            Method::NaeEdgeGap => "nae-edge-gap",
            Method::Construction => "construction",
        }
    }
}

/// Answer of a decider. A `yes` always carries a witness that the verifier
/// accepted; the constructors below are the only way to build one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    witness: Option<Labeling>,
    method: Method,
}

impl SolveOutcome {
    pub(crate) fn yes(witness: Labeling, method: Method) -> Self {
        SolveOutcome {
            witness: Some(witness),
            method,
        }
    }

    pub(crate) fn no(method: Method) -> Self {
        SolveOutcome { witness: None, method }
    }

    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness(&self) -> Option<&Labeling> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Labeling> {
        self.witness
    }

    pub fn method(&self) -> Method {
        self.method
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget of {0} nodes exhausted before an answer was found")]
    Budget(u64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("internal error: produced labeling is not proper")]
    ImproperWitness,
}

/// Returned when an exact search runs past its node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {0} nodes exhausted")]
pub struct BudgetExceeded(pub u64);

impl From<BudgetExceeded> for SolveError {
    fn from(b: BudgetExceeded) -> Self {
        SolveError::Budget(b.0)
    }
}

/// Verifies `f` and wraps it as a `yes`.
pub(crate) fn checked_yes(
    g: &crate::graph::Graph,
    rule: crate::semantics::LabelingRule,
    f: Labeling,
    method: Method,
) -> Result<SolveOutcome, SolveError> {
    if crate::semantics::verify_proper(g, rule, &f)?.is_proper() {
        Ok(SolveOutcome::yes(f, method))
    } else {
        Err(SolveError::ImproperWitness)
    }
}
