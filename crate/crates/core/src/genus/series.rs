use num_rational::BigRational;

use super::arith::ArithmeticFunction;
use crate::counting::{dep_slice_points, CountError, CountOptions, CountSeries, LwComplex, LwFace};
use crate::normal::SurfaceComplex;
use crate::par;

/// `ã(n) = a(n + 1)`: connected surfaces of genus `n + 1`, for `n = 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSeries {
    pub values: Vec<u64>,
}

impl GenusSeries {
    pub fn new(values: Vec<u64>) -> Self {
        GenusSeries { values }
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `ã(n)` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// `a(g)` for `g ≥ 2`.
    pub fn genus(&self, g: usize) -> Option<u64> {
        g.checked_sub(1).and_then(|n| self.get(n))
    }

    pub fn as_function(&self) -> ArithmeticFunction {
        ArithmeticFunction::new(
            self.values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        CountSeries::new(self.values.clone()).to_csv("a")
    }

    pub fn from_csv(text: &str) -> Result<Self, CountError> {
        Ok(GenusSeries::new(CountSeries::from_csv(text)?.values))
    }
}

/// Connected surfaces carried by `dep` of one face, per slice.
pub fn face_genus_counts(
    lw: &LwComplex,
    face: &LwFace,
    horizon: usize,
    opts: &CountOptions,
) -> Result<GenusSeries, CountError> {
    if !face.w_basis.is_empty() {
        return Err(CountError::Unsupported(format!(
            "face `{}` has a nonzero isotopy subspace; genus counts need W = 0",
            face.name
        )));
    }
    let values = par::map_range(horizon, |i| -> Result<u64, CountError> {
        let mut connected = 0;
        for p in dep_slice_points(lw, face, i + 1, opts)? {
            if SurfaceComplex::build(&lw.triangulation, &p, opts.disk_cap)?.is_connected() {
                connected += 1;
            }
        }
        Ok(connected)
    });
    Ok(GenusSeries::new(values.into_iter().collect::<Result<_, _>>()?))
}

/// Per-face connected counts for genus `2..=max_genus`.
pub fn genus_counts_by_face(
    lw: &LwComplex,
    max_genus: usize,
    opts: &CountOptions,
) -> Result<Vec<(String, GenusSeries)>, CountError> {
    let horizon = max_genus.saturating_sub(1);
    let counted: Vec<&LwFace> = lw.faces.iter().filter(|f| f.is_counted()).collect();
    if let Some(f) = counted.iter().find(|f| !f.w_basis.is_empty()) {
        return Err(CountError::Unsupported(format!(
            "face `{}` has a nonzero isotopy subspace; genus counts need W = 0",
            f.name
        )));
    }
    par::try_map(&counted, |f| {
        Ok((f.name.clone(), face_genus_counts(lw, f, horizon, opts)?))
    })
}

/// `ã(n)` for `n = 1..=max_genus − 1`, summed over counted faces.
pub fn genus_counts(
    lw: &LwComplex,
    max_genus: usize,
    opts: &CountOptions,
) -> Result<GenusSeries, CountError> {
    let mut values = vec![0u64; max_genus.saturating_sub(1)];
    for (_, s) in genus_counts_by_face(lw, max_genus, opts)? {
        for (acc, v) in values.iter_mut().zip(&s.values) {
            *acc += v;
        }
    }
    Ok(GenusSeries::new(values))
}

/// Prefix sums `ā(n) = Σ_{k ≤ n} ã(k)`.
pub fn smooth(a: &[u64]) -> Vec<u64> {
    a.iter()
        .scan(0u64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}
