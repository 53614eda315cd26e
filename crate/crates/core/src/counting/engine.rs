use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ehrhart::ehrhart_series_exact;
use super::fit::{fit_short_gf, FitOptions};
use super::lw::{LwComplex, LwFace};
use super::slice::{Slice, DEFAULT_POINT_CAP};
use super::{CountError, CountSeries};
use crate::exact::LatticeDecomposition;
use crate::gf::{gf_add, ShortGF};
use crate::normal::{CoordSystem, NormalVector, SurfaceComplex, DEFAULT_DISK_CAP};
use crate::par;

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub point_cap: usize,
    pub disk_cap: u64,
    /// Build every counted surface and abort on a nonorientable component.
    pub check_orientable: bool,
    pub fit: FitOptions,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            point_cap: DEFAULT_POINT_CAP,
            disk_cap: DEFAULT_DISK_CAP,
            check_orientable: true,
            fit: FitOptions::default(),
        }
    }
}

/// Lattice points of one `χ = −2n` slice of a face.
#[derive(Clone, Debug)]
pub struct SlicePointSet {
    pub n: usize,
    pub points: Vec<NormalVector>,
}

/// Points of the face with `χ = −2n`, sorted lexicographically.
pub fn enumerate_slice(
    lw: &LwComplex,
    face: &LwFace,
    n: usize,
    cap: usize,
) -> Result<SlicePointSet, CountError> {
    if n == 0 {
        return Ok(SlicePointSet {
            n,
            points: Vec::new(),
        });
    }
    let rows = lw.system.rows_i64();
    let slice = Slice {
        rows: &rows,
        dim: lw.system.dim(),
        support: &face.support,
        functional: &lw.degree,
    };
    let raw = slice.points(&BigRational::from_integer(n.into()), cap)?;
    let points = raw
        .into_iter()
        .map(|v| NormalVector::new(CoordSystem::Standard, v))
        .collect::<Result<_, _>>()?;
    Ok(SlicePointSet { n, points })
}

/// Keeps nonzero points with `Σ_{i ∈ I_D} x_i ≥ 1` for every active set.
pub fn dep_filter(points: &[NormalVector], active_sets: &[Vec<usize>]) -> Vec<NormalVector> {
    points
        .iter()
        .filter(|p| !p.is_zero() && active_sets.iter().all(|s| s.iter().any(|&i| p.entries()[i] > 0)))
        .cloned()
        .collect()
}

/// Classes of points modulo `W`, each with its lexicographically least member.
#[derive(Clone, Debug)]
pub struct QuotientCount {
    pub count: usize,
    pub representatives: Vec<NormalVector>,
    /// Indices into the input for each class, in the order of `representatives`.
    pub classes: Vec<Vec<usize>>,
}

pub fn quotient_count(
    points: &[NormalVector],
    decomposition: &LatticeDecomposition,
) -> Result<QuotientCount, CountError> {
    let mut groups: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let key = if decomposition.w.is_empty() {
            p.to_bigint()
        } else {
            decomposition.project(&p.to_bigint())?
        };
        groups.entry(key).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort_by(|&a, &b| points[a].entries().cmp(points[b].entries()));
    }
    classes.sort_by(|a, b| points[a[0]].entries().cmp(points[b[0]].entries()));
    Ok(QuotientCount {
        count: classes.len(),
        representatives: classes.iter().map(|c| points[c[0]].clone()).collect(),
        classes,
    })
}

/// Points of `dep(C)` on the slice `χ = −2n`, guarded against nonorientable
/// components when requested.
pub fn dep_slice_points(
    lw: &LwComplex,
    face: &LwFace,
    n: usize,
    opts: &CountOptions,
) -> Result<Vec<NormalVector>, CountError> {
    let slice = enumerate_slice(lw, face, n, opts.point_cap)?;
    let kept = dep_filter(&slice.points, &face.dependence.active_sets);
    if opts.check_orientable {
        for p in &kept {
            let cx = SurfaceComplex::build(&lw.triangulation, p, opts.disk_cap)?;
            if let Some(c) = cx.components().iter().find(|c| !c.orientable) {
                return Err(CountError::Nonorientable(format!(
                    "face `{}` carries {p} with a nonorientable component of Euler characteristic {}",
                    face.name, c.euler_char
                )));
            }
        }
    }
    Ok(kept)
}

fn check_even_degrees(lw: &LwComplex, face: &LwFace) -> Result<(), CountError> {
    for &r in &face.rays {
        let d: BigRational = lw.surfaces[r]
            .vector
            .entries()
            .iter()
            .zip(&lw.degree)
            .filter(|(x, _)| **x != 0)
            .map(|(x, c)| c * BigInt::from(*x))
            .sum();
        if !d.is_integer() {
            return Err(CountError::Nonorientable(format!(
                "surface `{}` on face `{}` has odd Euler characteristic",
                lw.surfaces[r].name, face.name
            )));
        }
    }
    Ok(())
}

/// `b_C(−2n)` for `n = 1..=horizon`: isotopy classes carried by `dep(C)`.
pub fn face_count_series(
    lw: &LwComplex,
    face: &LwFace,
    horizon: usize,
    opts: &CountOptions,
) -> Result<CountSeries, CountError> {
    check_even_degrees(lw, face)?;
    let values = par::map_range(horizon, |i| -> Result<u64, CountError> {
        let kept = dep_slice_points(lw, face, i + 1, opts)?;
        Ok(quotient_count(&kept, &face.decomposition)?.count as u64)
    });
    Ok(CountSeries::new(values.into_iter().collect::<Result<_, _>>()?))
}

/// Generating function of `b_C`: exact Ehrhart series when `W = 0`, else a
/// verified fit of the first `horizon` values.
pub fn face_series_gf(
    lw: &LwComplex,
    face: &LwFace,
    series: &CountSeries,
    opts: &CountOptions,
) -> Result<ShortGF, CountError> {
    let local: BTreeMap<usize, usize> = face.rays.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    if face.w_basis.is_empty() {
        let rays: Vec<Vec<BigInt>> = face
            .rays
            .iter()
            .map(|&r| lw.surfaces[r].vector.to_bigint())
            .collect();
        // the apex is never counted
        let mut removed: Vec<Vec<usize>> = vec![Vec::new()];
        removed.extend(
            face.dependence
                .maximal_independent
                .iter()
                .map(|d| d.rays.iter().map(|r| local[r]).collect::<Vec<usize>>()),
        );
        return ehrhart_series_exact(&rays, &lw.degree, &removed);
    }
    let mut fit = opts.fit.clone();
    for &r in &face.rays {
        let d: BigRational = lw.surfaces[r]
            .vector
            .entries()
            .iter()
            .zip(&lw.degree)
            .filter(|(x, _)| **x != 0)
            .map(|(x, c)| c * BigInt::from(*x))
            .sum();
        fit.base
            .push(d.to_integer().try_into().map_err(|_| CountError::Overflow)?);
    }
    fit_short_gf(&series.coefficients(), &fit)
}

/// Points that landed in more than one `dep`, and points carried by the
/// complex that no counted `dep` covers.
#[derive(Clone, Debug, Default)]
pub struct DisjointnessReport {
    pub checked_up_to: usize,
    pub overlaps: Vec<(usize, NormalVector, Vec<String>)>,
    pub uncovered: Vec<(usize, NormalVector)>,
}

impl DisjointnessReport {
    pub fn is_clean(&self) -> bool {
        self.overlaps.is_empty() && self.uncovered.is_empty()
    }
}

pub fn check_disjointness(
    lw: &LwComplex,
    up_to: usize,
    opts: &CountOptions,
) -> Result<DisjointnessReport, CountError> {
    let mut report = DisjointnessReport {
        checked_up_to: up_to,
        ..Default::default()
    };
    for n in 1..=up_to {
        let mut owners: BTreeMap<NormalVector, Vec<String>> = BTreeMap::new();
        for face in lw.faces.iter().filter(|f| f.is_counted()) {
            for p in dep_slice_points(lw, face, n, opts)? {
                owners.entry(p).or_default().push(face.name.clone());
            }
        }
        let mut carried: BTreeSet<NormalVector> = BTreeSet::new();
        for face in &lw.faces {
            carried.extend(enumerate_slice(lw, face, n, opts.point_cap)?.points);
        }
        for (p, names) in &owners {
            if names.len() > 1 {
                report.overlaps.push((n, p.clone(), names.clone()));
            }
        }
        for p in carried {
            if !owners.contains_key(&p) {
                report.uncovered.push((n, p));
            }
        }
    }
    Ok(report)
}

/// `b_M` and `B_M(x)` summed over complete essential faces.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub series: CountSeries,
    pub gf: ShortGF,
    pub per_face: Vec<(String, CountSeries, ShortGF)>,
    pub disjointness: DisjointnessReport,
}

pub fn assemble_bm(lw: &LwComplex, horizon: usize, opts: &CountOptions) -> Result<Assembly, CountError> {
    let counted: Vec<&LwFace> = lw.faces.iter().filter(|f| f.is_counted()).collect();
    let per_face = par::try_map(&counted, |face| -> Result<_, CountError> {
        let s = face_count_series(lw, face, horizon, opts)?;
        let g = face_series_gf(lw, face, &s, opts)?;
        let e = g.expand(horizon + 1);
        for (n, v) in s.values.iter().enumerate() {
            if e[n + 1] != BigRational::from_integer((*v).into()) {
                return Err(CountError::Invalid(format!(
                    "face `{}`: generating function disagrees with the count at n = {}",
                    face.name,
                    n + 1
                )));
            }
        }
        Ok((face.name.clone(), s, g))
    })?;
    let mut values = vec![0u64; horizon];
    let mut gf = ShortGF::zero();
    for (_, s, g) in &per_face {
        for (acc, v) in values.iter_mut().zip(&s.values) {
            *acc += v;
        }
        gf = gf_add(&gf, g);
    }
    let disjointness = check_disjointness(lw, horizon.min(6), opts)?;
    Ok(Assembly {
        series: CountSeries::new(values),
        gf,
        per_face,
        disjointness,
    })
}
