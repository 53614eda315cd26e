//! Counting isotopy classes of closed essential surfaces in triangulated
//! 3-manifolds.
//!
//! The pipeline runs from triangulation gluing data (plain gluing files or
//! isomorphism signatures) through normal-surface solution cones, admissible
//! faces and lattice-point enumeration, to short generating functions for the
//! number of surfaces of each Euler characteristic and the arithmetic of
//! connected-surface counts by genus.
//!
//! Everything that decides a count is exact: integers and rationals are
//! arbitrary precision and the linear programming is a rational simplex.
//! Floating point only appears in [`genus::areg_limit`] and
//! [`genus::slope_estimate`].

pub mod cone;
pub mod counting;
pub mod exact;
pub mod genus;
pub mod gf;
pub mod normal;
pub mod par;
pub mod surfaces;
pub mod triangulation;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;
