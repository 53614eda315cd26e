//! Counting isotopy classes of surfaces carried by an lw-complex.
//!
//! For each complete essential face `C` the surfaces with `χ = −2n` carried
//! by `dep(C)` are enumerated exactly, filtered by the active coordinate sets
//! of the maximal independent subfaces, and counted modulo the isotopy
//! subspace `W_C`. Generating functions come from an exact Ehrhart
//! computation when `W_C = 0` and from a verified fit otherwise.

mod ehrhart;
mod engine;
mod fit;
mod lw;
mod slice;

pub use ehrhart::ehrhart_series_exact;
pub use engine::{
    assemble_bm, check_disjointness, dep_filter, dep_slice_points, enumerate_slice, face_count_series,
    face_series_gf, quotient_count, Assembly, CountOptions, DisjointnessReport, QuotientCount, SlicePointSet,
};
pub use fit::{fit_short_gf, FitOptions};
pub use lw::{load_lw, parse_lw, LwComplex, LwFace, LwSurface};
pub use slice::{functional_positive_on, Slice, DEFAULT_POINT_CAP};

use num_rational::BigRational;
use thiserror::Error;

use crate::cone::ConeError;
use crate::exact::ExactError;
use crate::gf::GfError;
use crate::normal::NormalError;
use crate::triangulation::TriError;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("line {line}: {msg}")]
    Lw { line: usize, msg: String },
    #[error("face `{face}`: {msg}")]
    Validation { face: String, msg: String },
    #[error("unbounded slice: {0}")]
    Unbounded(String),
    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("nonorientable surface: {0}")]
    Nonorientable(String),
    #[error("no fit: {0}")]
    NoFit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Tri(#[from] TriError),
}

impl CountError {
    /// Whether the failure is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            CountError::CapExceeded { .. }
                | CountError::Normal(NormalError::CapExceeded { .. })
                | CountError::Cone(ConeError::CapExceeded { .. })
        )
    }
}

/// `b(−2n)` for `n = 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CountSeries {
    pub values: Vec<u64>,
}

impl CountSeries {
    pub fn new(values: Vec<u64>) -> Self {
        CountSeries { values }
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// Value at `n ≥ 1`.
    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// Power series coefficients from `x^0`, with a leading zero.
    pub fn coefficients(&self) -> Vec<BigRational> {
        std::iter::once(0u64)
            .chain(self.values.iter().copied())
            .map(|v| BigRational::from_integer(v.into()))
            .collect()
    }

    pub fn to_csv(&self, column: &str) -> String {
        let mut out = format!("n,{column}\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{v}\n", i + 1));
        }
        out
    }

    /// Parses `n,value` rows (with a header); `n` must run `1, 2, ...`.
    pub fn from_csv(text: &str) -> Result<Self, CountError> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with('n')) {
                continue;
            }
            let (n, v) = line
                .split_once(',')
                .ok_or_else(|| CountError::Invalid(format!("line {}: expected `n,value`", i + 1)))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| CountError::Invalid(format!("line {}: bad index `{n}`", i + 1)))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| CountError::Invalid(format!("line {}: bad value `{v}`", i + 1)))?;
            if n != values.len() + 1 {
                return Err(CountError::Invalid(format!(
                    "line {}: expected n = {}, found {n}",
                    i + 1,
                    values.len() + 1
                )));
            }
            values.push(v);
        }
        Ok(CountSeries { values })
    }
}

#[cfg(test)]
mod tests;
