use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CountError;
use crate::exact::{
    int_to_rational, lattice_complement, rational_nullspace, rational_rank, rref, saturate,
    smith_normal_form, unimodular_inverse, IntegerMatrix,
};
use crate::gf::{gf_add, Poly, ShortGF};

/// A pointed rational cone together with the lattice `span ∩ Z^n` and an
/// integral-on-rays degree functional.
struct Cone {
    /// Rays in coordinates of a basis of the lattice.
    rays: Vec<Vec<BigInt>>,
    degrees: Vec<usize>,
    dim: usize,
    faces: Vec<Face>,
}

#[derive(Clone, Debug)]
struct Face {
    rays: Vec<usize>,
    dim: usize,
}

fn rat_rows(rows: &[&Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(int_to_rational).collect())
        .collect()
}

fn rank_of(rays: &[Vec<BigInt>], members: &[usize], dim: usize) -> usize {
    let rows: Vec<&Vec<BigInt>> = members.iter().map(|&i| &rays[i]).collect();
    rational_rank(&rat_rows(&rows), dim)
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

impl Cone {
    fn new(rays: &[Vec<BigInt>], degree: &[BigRational]) -> Result<Self, CountError> {
        let n = degree.len();
        if rays.is_empty() {
            return Err(CountError::Invalid("cone has no rays".into()));
        }
        let mut degrees = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(CountError::Invalid(format!(
                    "ray {i} has {} coordinates, degree functional has {n}",
                    r.len()
                )));
            }
            let d: BigRational = r.iter().zip(degree).map(|(x, c)| c * x).sum();
            if !d.is_integer() || !d.is_positive() {
                return Err(CountError::Invalid(format!(
                    "ray {i} has degree {d}; rays need positive integer degree"
                )));
            }
            degrees.push(d.to_integer().to_usize().ok_or(CountError::Overflow)?);
        }
        let basis = saturate(rays, n);
        let dec = lattice_complement(&basis, &[])?;
        let local: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| dec.ambient_coords(r))
            .collect::<Result<_, _>>()?;
        let dim = basis.len();
        let distinct: BTreeSet<Vec<BigInt>> = local.iter().map(|r| crate::exact::primitive(r)).collect();
        if distinct.len() != local.len() {
            return Err(CountError::Invalid("two rays are parallel".into()));
        }
        let faces = face_lattice(&local, dim)?;
        Ok(Cone {
            rays: local,
            degrees,
            dim,
            faces,
        })
    }
}

/// All faces of the cone, apex included, found as intersections of facets.
fn face_lattice(rays: &[Vec<BigInt>], dim: usize) -> Result<Vec<Face>, CountError> {
    let k = rays.len();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut pointed_ok = true;
    combinations(k, dim.saturating_sub(1), &mut |sub| {
        let rows: Vec<&Vec<BigInt>> = sub.iter().map(|&i| &rays[i]).collect();
        let rr = rat_rows(&rows);
        if rational_rank(&rr, dim) + 1 != dim {
            return;
        }
        let h = &rational_nullspace(&rr, dim)[0];
        let vals: Vec<BigRational> = rays
            .iter()
            .map(|r| r.iter().zip(h).map(|(x, c)| c * x).sum())
            .collect();
        let pos = vals.iter().any(Signed::is_positive);
        let neg = vals.iter().any(Signed::is_negative);
        if pos && neg {
            return;
        }
        if !pos && !neg {
            pointed_ok = false;
            return;
        }
        facets.insert((0..k).filter(|&i| vals[i].is_zero()).collect());
    });
    if !pointed_ok {
        return Err(CountError::Invalid("cone rays do not span their lattice".into()));
    }
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert((0..k).collect());
    sets.insert(Vec::new());
    for f in &facets {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        for s in current {
            let inter: Vec<usize> = s.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
            sets.insert(inter);
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|r| {
            let d = rank_of(rays, &r, dim);
            Face { rays: r, dim: d }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
    for f in &faces {
        if f.dim == 0 && !f.rays.is_empty() {
            return Err(CountError::Invalid("cone is not pointed".into()));
        }
    }
    Ok(faces)
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// `Σ_n #{x ∈ (C \ ∪ removed) ∩ Λ : deg(x) = n} x^n` where `C` is the cone
/// over `rays`, `Λ = span(rays) ∩ Z^n`, and `removed` lists faces of `C` by
/// ray indices.
///
/// Points of non-integral degree are not counted. Rays must have positive
/// integral degree.
pub fn ehrhart_series_exact(
    rays: &[Vec<BigInt>],
    degree: &[BigRational],
    removed: &[Vec<usize>],
) -> Result<ShortGF, CountError> {
    let cone = Cone::new(rays, degree)?;
    let mut removed_sets: Vec<Vec<usize>> = Vec::new();
    for r in removed {
        let mut s = r.clone();
        s.sort_unstable();
        s.dedup();
        if !cone.faces.iter().any(|f| f.rays == s) {
            return Err(CountError::Invalid(format!("removed set {s:?} is not a face")));
        }
        removed_sets.push(s);
    }
    // Euler inclusion-exclusion: relint F = Σ_{G ⊆ F} (−1)^{dim F − dim G} G
    let mut weight: BTreeMap<usize, i64> = BTreeMap::new();
    for f in &cone.faces {
        if removed_sets.iter().any(|r| is_subset(&f.rays, r)) {
            continue;
        }
        for (gi, g) in cone.faces.iter().enumerate() {
            if is_subset(&g.rays, &f.rays) {
                let sign = if (f.dim - g.dim) % 2 == 0 { 1 } else { -1 };
                *weight.entry(gi).or_insert(0) += sign;
            }
        }
    }
    let mut total = ShortGF::zero();
    for (gi, w) in weight {
        if w == 0 {
            continue;
        }
        let g = closed_face_series(&cone, gi)?;
        total = gf_add(&total, &g.scale(&BigRational::from_integer(w.into())));
    }
    Ok(total)
}

fn triangulate(cone: &Cone, face: usize, memo: &mut BTreeMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&face) {
        return t.clone();
    }
    let f = &cone.faces[face];
    let out = if f.rays.len() == f.dim {
        vec![f.rays.clone()]
    } else {
        let apex = f.rays[0];
        let mut simplices = Vec::new();
        let facets: Vec<usize> = (0..cone.faces.len())
            .filter(|&h| {
                let hf = &cone.faces[h];
                hf.dim + 1 == f.dim && is_subset(&hf.rays, &f.rays) && !hf.rays.contains(&apex)
            })
            .collect();
        for h in facets {
            for mut s in triangulate(cone, h, memo) {
                s.push(apex);
                s.sort_unstable();
                simplices.push(s);
            }
        }
        simplices
    };
    memo.insert(face, out.clone());
    out
}

fn rational_inverse(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = m.len();
    let aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let red = rref(&aug, 2 * k);
    red.rows.iter().map(|r| r[k..].to_vec()).collect()
}

fn closed_face_series(cone: &Cone, face: usize) -> Result<ShortGF, CountError> {
    let f = &cone.faces[face];
    if f.rays.is_empty() {
        return Ok(ShortGF::polynomial(Poly::one()));
    }
    let members: Vec<Vec<BigInt>> = f.rays.iter().map(|&i| cone.rays[i].clone()).collect();
    let basis = saturate(&members, cone.dim);
    let dec = lattice_complement(&basis, &[])?;
    let coords: BTreeMap<usize, Vec<BigInt>> = f
        .rays
        .iter()
        .map(|&i| Ok((i, dec.ambient_coords(&cone.rays[i])?)))
        .collect::<Result<_, CountError>>()?;
    let m = f.dim;
    let simplices = triangulate(cone, face, &mut BTreeMap::new());

    // generic interior point: positive combination with pseudo-random weights
    let inverses: Vec<Vec<Vec<BigRational>>> = simplices
        .iter()
        .map(|s| {
            let cols: Vec<Vec<BigRational>> = (0..m)
                .map(|row| s.iter().map(|r| int_to_rational(&coords[r][row])).collect())
                .collect();
            rational_inverse(&cols)
        })
        .collect();
    let mut chosen: Option<Vec<Vec<BigRational>>> = None;
    for attempt in 0u64..200 {
        let mut q = vec![BigRational::zero(); m];
        for (j, r) in f.rays.iter().enumerate() {
            let w = BigRational::new(
                BigInt::from(1000 + (j as u64 * 7919 + attempt * 104_729 + 13) % 997),
                BigInt::from(1000),
            );
            for (qi, c) in q.iter_mut().zip(&coords[r]) {
                *qi += &w * c;
            }
        }
        let lambdas: Vec<Vec<BigRational>> = inverses
            .iter()
            .map(|inv| {
                inv.iter()
                    .map(|row| row.iter().zip(&q).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        if lambdas
            .iter()
            .all(|l: &Vec<BigRational>| l.iter().all(|x| !x.is_zero()))
        {
            chosen = Some(lambdas);
            break;
        }
    }
    let lambdas = chosen.ok_or_else(|| CountError::Invalid("no generic interior point found".into()))?;

    let mut total = ShortGF::zero();
    for ((s, inv), lam) in simplices.iter().zip(&inverses).zip(&lambdas) {
        let open: Vec<bool> = lam.iter().map(Signed::is_negative).collect();
        let degs: Vec<usize> = s.iter().map(|&r| cone.degrees[r]).collect();
        let num = parallelepiped_numerator(s, &coords, inv, &open, &degs, m)?;
        let g = ShortGF::new(num, degs.iter().map(|&d| (d, 1)))?;
        total = gf_add(&total, &g);
    }
    Ok(total)
}

/// `Σ x^{deg p}` over lattice points `p = Σ λ_i r_i` with `λ_i ∈ [0,1)`, or
/// `(0,1]` for open facets, and integral degree.
fn parallelepiped_numerator(
    simplex: &[usize],
    coords: &BTreeMap<usize, Vec<BigInt>>,
    inv: &[Vec<BigRational>],
    open: &[bool],
    degs: &[usize],
    m: usize,
) -> Result<Poly, CountError> {
    let mut r = IntegerMatrix::zeros(m, m);
    for (col, ray) in simplex.iter().enumerate() {
        for row in 0..m {
            r[(row, col)] = coords[ray][row].clone();
        }
    }
    let snf = smith_normal_form(&r);
    let uinv = unimodular_inverse(&snf.u);
    let diag: Vec<u64> = snf
        .invariant_factors()
        .iter()
        .map(|d| d.abs().to_u64().ok_or(CountError::Overflow))
        .collect::<Result<_, _>>()?;
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    let mut z = vec![0u64; m];
    loop {
        let zb: Vec<BigInt> = z.iter().map(|&v| BigInt::from(v)).collect();
        let y = uinv.mul_vec(&zb)?;
        let mut deg = BigRational::zero();
        for i in 0..m {
            let lam: BigRational = inv[i].iter().zip(&y).map(|(a, b)| a * b).sum();
            let mut frac = &lam - lam.floor();
            if frac.is_zero() && open[i] {
                frac = BigRational::one();
            }
            deg += frac * BigInt::from(degs[i]);
        }
        if deg.is_integer() {
            let d = deg.to_integer().to_usize().ok_or(CountError::Overflow)?;
            *counts.entry(d).or_insert(0) += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                let top = counts.keys().max().copied().unwrap_or(0);
                let mut c = vec![0i64; top + 1];
                for (d, v) in counts {
                    c[d] = v;
                }
                return Ok(Poly::from_ints(&c));
            }
            z[i] += 1;
            if z[i] < diag[i] {
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}
