//! Exact integer and rational linear algebra.
//!
//! Smith normal form, lattice kernels and complements, and a rational simplex
//! method for feasibility and optimisation. No floating point is used here.

mod lattice;
mod lp;
mod matrix;
mod snf;

pub(crate) use lattice::unimodular_inverse;
pub use lattice::{lattice_complement, saturate, LatticeDecomposition};
pub use lp::{lp_feasible, lp_optimize, LinearProgram, LpOutcome, VarKind};
pub use matrix::{
    dot, int_to_rational, primitive, rational_nullspace, rational_rank, rref, solve_rational, to_bigint_vec,
    IntegerMatrix, Rref,
};
pub use snf::{integer_kernel_basis, smith_normal_form, Snf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("vector does not lie in the ambient lattice span")]
    NotInSpan,
}
