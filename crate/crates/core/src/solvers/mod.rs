//! Solvers for the happy-vertices and happy-edges problems.

mod growth;
pub mod mhe;
pub mod mhv;
pub mod variants;

use thiserror::Error;

use crate::flow::FlowError;
use crate::state::StateError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("solver requires exactly 2 colors, spec has {0}")]
    RequiresTwoColors(usize),
    #[error("enumeration needs {required} colorings, budget allows {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("hard threshold {q} exceeds maximum degree {max_degree}: no vertex can be happy")]
    ThresholdTooLarge { q: usize, max_degree: usize },
    #[error("hard threshold must be a positive integer")]
    ThresholdZero,
    #[error("soft threshold {0} must lie strictly between 0 and 1")]
    SoftThresholdOutOfRange(String),
}
