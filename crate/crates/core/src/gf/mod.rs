//! Short rational generating functions and quasi-polynomials.
//!
//! A short generating function is stored as `P(x) / Π (1 − x^b)^m`. Its
//! coefficients are eventually a quasi-polynomial in `n`, and the partial
//! sums of a nonnegative quasi-polynomial grow like `c·n^d`.

mod poly;
mod quasi;
mod short;

pub use poly::{interpolate, Poly};
pub use quasi::{smooth_asymptotics, to_quasipolynomial, AsymptoticProfile, QuasiPolynomial};
pub use short::{gf_add, gf_expand, gf_normalize, is_short, ShortGF};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("denominator factor 1 - x^0 vanishes")]
    ZeroDenominator,
    #[error("cannot parse generating function: {0}")]
    Parse(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("{0}")]
    Invalid(String),
}

#[cfg(test)]
mod tests;
