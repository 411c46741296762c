//! Finite Grassmannians, finite-perturbation frames of `H_+` and the
//! expansion of `<0|g|W>` in N-Schur functions.

mod frame;
mod plucker;
mod theorem1;

pub use frame::FiniteFrame;
pub use plucker::{exchange_relations, k_subsets, minors, plucker_check, PluckerVector, QuadraticForm};
pub use theorem1::{
    default_truncation, expansion_lhs, expansion_lhs_at, formal_operator, random_instance, theorem1_check, Expansion,
    GOperator, Theorem1Report, DEFAULT_CEILING,
};
