//! Connected-surface counts by genus and the arithmetic around them:
//! smoothing, Dirichlet convolution, Möbius inversion, Lambert-series
//! regularity, the `ζ` limit and log-log slope estimates.

mod analysis;
mod arith;
mod series;

pub use analysis::{
    analyze_genus, areg_check, areg_limit, loglog_csv, regularity_test, slope_estimate, svg_scatter, zeta,
    AnalyzeOptions, AregCheck, GenusAnalysis, Regularity, SlopeEstimate, MIN_REGULARITY_TERMS,
};
pub use arith::{
    dirichlet_convolve, divisor_sum, factorize, mobius, mobius_invert, mobius_table, totient,
    ArithmeticFunction,
};
pub use series::{face_genus_counts, genus_counts, genus_counts_by_face, smooth, GenusSeries};

#[cfg(test)]
mod tests;
