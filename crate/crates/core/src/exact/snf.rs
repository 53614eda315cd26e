use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::abs_cmp;
use super::IntegerMatrix;

/// Smith normal form `U·A·V = S` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Number of nonzero invariant factors.
    pub rank: usize,
}

impl Snf {
    /// The diagonal entries `d_1 | d_2 | ...` (including trailing zeros).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

/// Position of the smallest nonzero |entry| in the lower-right block from `t`.
fn min_pivot(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| abs_cmp(x, &s[(bi, bj)]).is_lt()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Snf {
    let (r, c) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder is now smaller than the pivot; bring the
                // smallest entry of row/column t to the corner
                let mut best = (t, t);
                for i in t + 1..r {
                    if !s[(i, t)].is_zero() && abs_cmp(&s[(i, t)], &s[best]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !s[(t, j)].is_zero() && abs_cmp(&s[(t, j)], &s[best]).is_lt() {
                        best = (t, j);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let d = s[(t, t)].clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&d));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, s, v, rank: t }
}

/// Lattice basis of `ker(A) ∩ Z^cols`.
///
/// The returned vectors are the trailing columns of the right transform of
/// the Smith normal form, so they generate the full kernel lattice, not just
/// a finite-index sublattice.
pub fn integer_kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    if a.rows() == 0 {
        return (0..a.cols())
            .map(|j| {
                let mut e = vec![BigInt::zero(); a.cols()];
                e[j] = BigInt::one();
                e
            })
            .collect();
    }
    let snf = smith_normal_form(a);
    let mut basis: Vec<Vec<BigInt>> = (snf.rank..a.cols()).map(|j| snf.v.column(j)).collect();
    // cosmetic: prefer a leading positive entry
    for b in &mut basis {
        if b.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in b.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    basis
}
