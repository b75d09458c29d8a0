//! Data words, their structure semantics, and first-order evaluation.

mod compat;
mod eval;
mod grounded;
mod structure;
mod word;

pub use compat::{check_compatibility, check_fairness_window};
pub use eval::{evaluate, evaluate_closed, Assignment, EvalError};
pub use grounded::evaluate_grounded;
pub use structure::{Element, WordStructure};
pub use word::{DataWord, Position, ProcessPools, WordError};

use crate::logic::Signature;

/// Builds the logical structure of `w` over `pools`.
pub fn to_structure(w: &DataWord, pools: &ProcessPools, sig: &Signature) -> Result<WordStructure, WordError> {
    WordStructure::new(w, pools, sig)
}
