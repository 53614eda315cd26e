use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ConeError;
use crate::exact::{int_to_rational, lp_feasible, rational_rank, IntegerMatrix};
use crate::normal::{MatchingSystem, NormalVector};

/// A nonempty face of a face `C`, given by the rays of `C` it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubFace {
    pub support: Vec<usize>,
    pub rays: Vec<usize>,
    pub dependent: bool,
}

#[derive(Clone, Debug)]
pub struct DependenceData {
    /// Every nonempty face of `C`, including `C`, largest first.
    pub faces: Vec<SubFace>,
    /// Independent faces not contained in a larger independent face.
    pub maximal_independent: Vec<SubFace>,
    /// For each maximal independent face `D`, the coordinates that vanish on
    /// `D` but not on `C`.
    pub active_sets: Vec<Vec<usize>>,
}

fn support_of(rays: &[NormalVector], members: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = members.iter().flat_map(|&r| rays[r].support()).collect();
    s.into_iter().collect()
}

/// All nonempty faces of the cone spanned by `face_rays`, each obtained by
/// zeroing coordinates. Sorted by decreasing ray count, then ray list.
pub fn face_lattice(rays: &[NormalVector], face_rays: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = vec![face_rays.to_vec()];
    seen.insert(face_rays.to_vec());
    while let Some(f) = queue.pop() {
        for i in support_of(rays, &f) {
            let sub: Vec<usize> = f.iter().copied().filter(|&r| rays[r].entries()[i] == 0).collect();
            if !sub.is_empty() && seen.insert(sub.clone()) {
                queue.push(sub);
            }
        }
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>)> =
        seen.into_iter().map(|r| (support_of(rays, &r), r)).collect();
    out.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Splits the faces of `C` (spanned by `face_rays`) into those whose points
/// can be pushed into the relative interior of `C` along `W` (dependent) and
/// the rest, by one exact LP per face.
pub fn classify_dependent_faces(
    system: &MatchingSystem,
    rays: &[NormalVector],
    face_rays: &[usize],
    w_basis: &[Vec<BigInt>],
    weight: Option<&[BigRational]>,
) -> Result<DependenceData, ConeError> {
    let n = system.dim();
    if face_rays.is_empty() {
        return Err(ConeError::InvalidSubspace("face has no rays".into()));
    }
    if let Some(w) = w_basis.iter().find(|w| w.len() != n) {
        return Err(ConeError::Dimension(format!(
            "subspace vector has {} entries, expected {n}",
            w.len()
        )));
    }
    let ray_rows: Vec<Vec<BigRational>> = face_rays
        .iter()
        .map(|&r| {
            rays[r]
                .entries()
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let w_rows: Vec<Vec<BigRational>> = w_basis
        .iter()
        .map(|w| w.iter().map(int_to_rational).collect())
        .collect();
    let base_rank = rational_rank(&ray_rows, n);
    let mut both = ray_rows.clone();
    both.extend(w_rows.iter().cloned());
    if rational_rank(&both, n) != base_rank {
        return Err(ConeError::InvalidSubspace(
            "subspace is not inside the span of the face".into(),
        ));
    }
    if rational_rank(&w_rows, n) != w_rows.len() {
        return Err(ConeError::InvalidSubspace("subspace basis is dependent".into()));
    }
    if let Some(wt) = weight {
        for w in &w_rows {
            let s: BigRational = w.iter().zip(wt).map(|(a, b)| a * b).sum();
            if !s.is_zero() {
                return Err(ConeError::InvalidSubspace(
                    "subspace is not inside the kernel of the weight".into(),
                ));
            }
        }
    }

    let lattice = face_lattice(rays, face_rays);
    let c_support = lattice[0].0.clone();
    let faces: Vec<SubFace> = lattice
        .into_iter()
        .enumerate()
        .map(|(i, (support, members))| {
            let dependent = if i == 0 {
                true
            } else if w_basis.is_empty() {
                false
            } else {
                pushes_into_interior(system, &c_support, &support, w_basis)?
            };
            Ok(SubFace {
                support,
                rays: members,
                dependent,
            })
        })
        .collect::<Result<_, ConeError>>()?;

    let independent: Vec<&SubFace> = faces.iter().filter(|f| !f.dependent).collect();
    let maximal_independent: Vec<SubFace> = independent
        .iter()
        .filter(|d| {
            !independent
                .iter()
                .any(|e| e.rays.len() > d.rays.len() && d.rays.iter().all(|r| e.rays.contains(r)))
        })
        .map(|d| (*d).clone())
        .collect();
    let active_sets = maximal_independent
        .iter()
        .map(|d| {
            c_support
                .iter()
                .copied()
                .filter(|i| d.support.binary_search(i).is_err())
                .collect()
        })
        .collect();
    Ok(DependenceData {
        faces,
        maximal_independent,
        active_sets,
    })
}

/// Feasibility of `x ∈ relint D`, `x + Wμ ∈ relint C`.
fn pushes_into_interior(
    system: &MatchingSystem,
    c_support: &[usize],
    d_support: &[usize],
    w_basis: &[Vec<BigInt>],
) -> Result<bool, ConeError> {
    let s = c_support.len();
    let k = w_basis.len();
    // variables: x (s), μ (k), y (s)
    let nv = 2 * s + k;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..system.matrix.rows() {
        let full = system.matrix.row(i);
        let mut row = vec![BigInt::zero(); nv];
        for (j, &c) in c_support.iter().enumerate() {
            row[j] = full[c].clone();
        }
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    for (j, c) in c_support.iter().enumerate() {
        if d_support.binary_search(c).is_err() {
            let mut row = vec![BigInt::zero(); nv];
            row[j] = BigInt::one();
            rows.push(row);
        }
        let mut row = vec![BigInt::zero(); nv];
        row[s + k + j] = BigInt::one();
        row[j] = -BigInt::one();
        for (m, w) in w_basis.iter().enumerate() {
            row[s + m] = -w[*c].clone();
        }
        rows.push(row);
    }
    let a = IntegerMatrix::from_rows_with_cols(&rows, nv);
    let nonneg: Vec<usize> = (0..s).chain(s + k..nv).collect();
    let strict: Vec<Vec<usize>> = (0..s)
        .filter(|&j| d_support.binary_search(&c_support[j]).is_ok())
        .map(|j| vec![j])
        .chain((0..s).map(|j| vec![s + k + j]))
        .collect();
    let sol = lp_feasible(&a, None, &nonneg, &strict).map_err(|e| ConeError::Internal(e.to_string()))?;
    Ok(sol.is_some())
}
