//! Double description: extreme rays of `{x ≥ 0 : A x = 0}`, inserting one
//! equation at a time.

use num_integer::Integer;

use super::ConeError;
use crate::exact::{int_to_rational, rref};
use crate::par;

#[derive(Clone, Debug)]
pub struct DdOptions {
    /// Return only rays with at most one nonzero coordinate per group.
    pub require_admissible: bool,
    /// Drop non-admissible intermediate rays as soon as they appear.
    pub prune_admissible: bool,
    /// Abort when the intermediate ray count exceeds this.
    pub max_rays: usize,
}

impl Default for DdOptions {
    fn default() -> Self {
        DdOptions {
            require_admissible: true,
            prune_admissible: true,
            max_rays: 2_000_000,
        }
    }
}

#[derive(Clone)]
struct Ray {
    coords: Vec<i64>,
    zeros: Vec<u64>,
}

fn zero_set(coords: &[i64]) -> Vec<u64> {
    let mut z = vec![0u64; coords.len().div_ceil(64).max(1)];
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            z[i / 64] |= 1 << (i % 64);
        }
    }
    z
}

fn contains(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

fn popcount(z: &[u64]) -> u32 {
    z.iter().map(|w| w.count_ones()).sum()
}

fn dot(row: &[i64], x: &[i64]) -> i128 {
    row.iter()
        .zip(x)
        .filter(|(a, _)| **a != 0)
        .map(|(a, b)| i128::from(*a) * i128::from(*b))
        .sum()
}

/// Admissibility on supports: each group may have at most one nonzero.
pub(crate) fn admissible_support(nonzero: impl Fn(usize) -> bool, groups: &[Vec<usize>]) -> bool {
    groups
        .iter()
        .all(|g| g.iter().filter(|&&i| nonzero(i)).count() <= 1)
}

fn combine(p: &Ray, n: &Ray, ap: i128, an: i128) -> Result<Ray, ConeError> {
    // ap > 0 > an; (ap)·n − (an)·p is nonnegative and satisfies the row
    let mut c: Vec<i128> = Vec::with_capacity(p.coords.len());
    let mut g: i128 = 0;
    for (x, y) in p.coords.iter().zip(&n.coords) {
        let v = ap
            .checked_mul(i128::from(*y))
            .and_then(|u| (-an).checked_mul(i128::from(*x)).and_then(|w| u.checked_add(w)))
            .ok_or(ConeError::Overflow)?;
        g = g.gcd(&v);
        c.push(v);
    }
    let coords = c
        .into_iter()
        .map(|v| i64::try_from(v / g).map_err(|_| ConeError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let zeros = zero_set(&coords);
    Ok(Ray { coords, zeros })
}

/// Extreme rays of `{x ∈ ℝ^dim : x ≥ 0, rows·x = 0}`, each primitive,
/// sorted lexicographically.
pub fn extreme_rays(
    rows: &[Vec<i64>],
    dim: usize,
    groups: &[Vec<usize>],
    opts: &DdOptions,
) -> Result<Vec<Vec<i64>>, ConeError> {
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut coords = vec![0i64; dim];
            coords[i] = 1;
            let zeros = zero_set(&coords);
            Ray { coords, zeros }
        })
        .collect();
    let mut rank = 0usize;
    for row in rows {
        if row.len() != dim {
            return Err(ConeError::Dimension(format!(
                "equation has {} entries, expected {dim}",
                row.len()
            )));
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        if vals.iter().all(|&v| v == 0) {
            continue;
        }
        rank += 1;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        // adjacent rays share tight constraints of rank dim − 2, and the
        // earlier equations supply only rank − 1 of them
        let need = (dim + 1).saturating_sub(rank + 2) as u32;
        let current = &rays;
        let created: Vec<Result<Vec<Ray>, ConeError>> = par::map(&pos, |&pi| {
            let p = &current[pi];
            let mut out = Vec::new();
            for &ni in &neg {
                let n = &current[ni];
                let common: Vec<u64> = p.zeros.iter().zip(&n.zeros).map(|(a, b)| a & b).collect();
                if popcount(&common) < need {
                    continue;
                }
                if opts.prune_admissible
                    && !admissible_support(|i| common[i / 64] >> (i % 64) & 1 == 0, groups)
                {
                    continue;
                }
                let blocked = current
                    .iter()
                    .enumerate()
                    .any(|(ri, r)| ri != pi && ri != ni && contains(&r.zeros, &common));
                if blocked {
                    continue;
                }
                out.push(combine(p, n, vals[pi], vals[ni])?);
            }
            Ok(out)
        });
        let mut next: Vec<Ray> = (0..rays.len())
            .filter(|&i| vals[i] == 0)
            .map(|i| rays[i].clone())
            .collect();
        for batch in created {
            next.extend(batch?);
        }
        if opts.prune_admissible {
            next.retain(|r| admissible_support(|i| r.coords[i] != 0, groups));
        }
        if next.len() > opts.max_rays {
            return Err(ConeError::CapExceeded {
                what: "intermediate rays",
                cap: opts.max_rays,
            });
        }
        rays = next;
    }
    if opts.require_admissible {
        rays.retain(|r| admissible_support(|i| r.coords[i] != 0, groups));
    }
    let mut out: Vec<Vec<i64>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    for r in &out {
        if !is_extreme(rows, r) {
            return Err(ConeError::Internal(format!(
                "ray {r:?} failed the extremality check"
            )));
        }
    }
    Ok(out)
}

/// `x` spans an extreme ray iff the equations restricted to its support
/// have a one-dimensional kernel.
pub fn is_extreme(rows: &[Vec<i64>], x: &[i64]) -> bool {
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
    if support.is_empty() || x.iter().any(|&v| v < 0) || rows.iter().any(|r| dot(r, x) != 0) {
        return false;
    }
    let restricted: Vec<Vec<_>> = rows
        .iter()
        .map(|r| support.iter().map(|&i| int_to_rational(&r[i].into())).collect())
        .collect();
    rref(&restricted, support.len()).rank() + 1 == support.len()
}
