use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CountError;
use crate::exact::{lp_optimize, rref, LinearProgram, LpOutcome};
use crate::par;

/// Default cap on the number of points a single slice may produce.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// Integer points `x ≥ 0` with `A x = 0`, `supp(x) ⊆ support` and
/// `functional · x = target`.
#[derive(Clone, Debug)]
pub struct Slice<'a> {
    pub rows: &'a [Vec<i64>],
    pub dim: usize,
    pub support: &'a [usize],
    pub functional: &'a [BigRational],
}

/// `L_p x_p = B_p − Σ_f N_pf x_f` for each pivot coordinate.
struct Param {
    pivots: Vec<usize>,
    free: Vec<usize>,
    scale: Vec<i128>,
    constant: Vec<i128>,
    coeff: Vec<Vec<i128>>,
    upper: Vec<i128>,
}

fn to_i128(x: &BigInt) -> Result<i128, CountError> {
    x.to_i128().ok_or(CountError::Overflow)
}

impl Slice<'_> {
    /// Every point on the slice, sorted lexicographically as full coordinate
    /// vectors.
    pub fn points(&self, target: &BigRational, cap: usize) -> Result<Vec<Vec<i64>>, CountError> {
        let Some(param) = self.parametrize(target)? else {
            return Ok(Vec::new());
        };
        let k = param.free.len();
        let mut out = if k == 0 {
            let mut acc = Vec::new();
            leaf(&param, &[], &param.constant, &mut acc);
            acc
        } else {
            // suffix slack: how far each pivot can still rise from free vars k..
            let p = param.pivots.len();
            let mut rise = vec![vec![0i128; p]; k + 1];
            for f in (0..k).rev() {
                for i in 0..p {
                    let r = (-param.coeff[i][f] * param.upper[f]).max(0);
                    rise[f][i] = rise[f + 1][i].checked_add(r).ok_or(CountError::Overflow)?;
                }
            }
            let first: Vec<i128> = (0..=param.upper[0]).collect();
            let chunks = par::map(&first, |&v0| {
                let mut acc = Vec::new();
                let mut values = vec![0i128; k];
                values[0] = v0;
                let partial: Vec<i128> = (0..p)
                    .map(|i| param.constant[i] - param.coeff[i][0] * v0)
                    .collect();
                search(&param, &rise, 1, &mut values, partial, &mut acc, cap);
                acc
            });
            let mut all = Vec::new();
            for c in chunks {
                all.extend(c);
                if all.len() > cap {
                    return Err(CountError::CapExceeded {
                        what: "slice points",
                        cap,
                    });
                }
            }
            all
        };
        if out.len() > cap {
            return Err(CountError::CapExceeded {
                what: "slice points",
                cap,
            });
        }
        let mut full: Vec<Vec<i64>> = out
            .drain(..)
            .map(|local| {
                let mut v = vec![0i64; self.dim];
                for (j, &c) in self.support.iter().enumerate() {
                    v[c] = local[j];
                }
                v
            })
            .collect();
        full.sort();
        Ok(full)
    }

    fn parametrize(&self, target: &BigRational) -> Result<Option<Param>, CountError> {
        let s = self.support.len();
        if self.functional.len() != self.dim {
            return Err(CountError::Invalid(format!(
                "functional has {} coefficients for {} coordinates",
                self.functional.len(),
                self.dim
            )));
        }
        let mut aug: Vec<Vec<BigRational>> = Vec::new();
        for row in self.rows {
            let r: Vec<BigRational> = self
                .support
                .iter()
                .map(|&c| BigRational::from_integer(row[c].into()))
                .chain(std::iter::once(BigRational::zero()))
                .collect();
            if r.iter().any(|x| !x.is_zero()) {
                aug.push(r);
            }
        }
        let mut frow: Vec<BigRational> = self.support.iter().map(|&c| self.functional[c].clone()).collect();
        frow.push(target.clone());
        aug.push(frow);
        let red = rref(&aug, s + 1);
        if red.pivots.last() == Some(&s) {
            return Ok(None);
        }
        let pivots = red.pivots.clone();
        let free: Vec<usize> = red.free_columns().into_iter().filter(|&c| c < s).collect();

        let mut lp = LinearProgram::new(s);
        for row in &aug {
            lp.eq.push((row[..s].to_vec(), row[s].clone()));
        }
        let mut upper = Vec::with_capacity(free.len());
        for &f in &free {
            lp.objective = vec![BigRational::zero(); s];
            lp.objective[f] = BigRational::one();
            match lp_optimize(&lp)? {
                LpOutcome::Optimal { value, .. } => upper.push(to_i128(&value.floor().to_integer())?),
                LpOutcome::Infeasible => return Ok(None),
                LpOutcome::Unbounded => {
                    return Err(CountError::Unbounded(format!(
                        "coordinate {} is unbounded on the slice",
                        self.support[f]
                    )))
                }
            }
        }
        if free.is_empty() {
            lp.objective = vec![BigRational::zero(); s];
            if matches!(lp_optimize(&lp)?, LpOutcome::Infeasible) {
                return Ok(None);
            }
        }

        let mut scale = Vec::new();
        let mut constant = Vec::new();
        let mut coeff = Vec::new();
        for row in &red.rows {
            let l = free
                .iter()
                .map(|&f| row[f].denom().clone())
                .fold(row[s].denom().clone(), |a, d| a.lcm(&d));
            let lq = BigRational::from_integer(l.clone());
            scale.push(to_i128(&l)?);
            constant.push(to_i128(&(&row[s] * &lq).to_integer())?);
            coeff.push(
                free.iter()
                    .map(|&f| to_i128(&(&row[f] * &lq).to_integer()))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(Some(Param {
            pivots,
            free,
            scale,
            constant,
            coeff,
            upper,
        }))
    }
}

fn search(
    param: &Param,
    rise: &[Vec<i128>],
    depth: usize,
    values: &mut Vec<i128>,
    partial: Vec<i128>,
    out: &mut Vec<Vec<i64>>,
    cap: usize,
) {
    if out.len() > cap {
        return;
    }
    if partial.iter().zip(&rise[depth]).any(|(a, r)| a + r < 0) {
        return;
    }
    if depth == values.len() {
        leaf(param, values, &partial, out);
        return;
    }
    for v in 0..=param.upper[depth] {
        values[depth] = v;
        let next: Vec<i128> = partial
            .iter()
            .zip(&param.coeff)
            .map(|(a, c)| a - c[depth] * v)
            .collect();
        search(param, rise, depth + 1, values, next, out, cap);
    }
}

fn leaf(param: &Param, values: &[i128], pivot_acc: &[i128], out: &mut Vec<Vec<i64>>) {
    let s = param.pivots.len() + param.free.len();
    let mut local = vec![0i64; s];
    for (i, &p) in param.pivots.iter().enumerate() {
        let (a, l) = (pivot_acc[i], param.scale[i]);
        if a < 0 || a % l != 0 {
            return;
        }
        match i64::try_from(a / l) {
            Ok(v) => local[p] = v,
            Err(_) => return,
        }
    }
    for (j, &f) in param.free.iter().enumerate() {
        local[f] = values[j] as i64;
    }
    out.push(local);
}

/// Whether every listed ray has strictly positive value under `functional`.
pub fn functional_positive_on(functional: &[BigRational], rays: &[&[i64]]) -> bool {
    rays.iter().all(|r| {
        let v: BigRational = r
            .iter()
            .zip(functional)
            .filter(|(x, _)| **x != 0)
            .map(|(x, c)| c * BigInt::from(*x))
            .sum();
        v.is_positive()
    })
}
