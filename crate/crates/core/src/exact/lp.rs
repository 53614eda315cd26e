//! Dense rational simplex method with Bland's anti-cycling rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::int_to_rational;
use super::{ExactError, IntegerMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    NonNeg,
    Free,
}

/// `maximize objective·x` subject to `eq` rows (`a·x = b`), `le` rows
/// (`a·x ≤ b`) and the sign restrictions in `kinds`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub kinds: Vec<VarKind>,
    pub eq: Vec<(Vec<BigRational>, BigRational)>,
    pub le: Vec<(Vec<BigRational>, BigRational)>,
    pub objective: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            kinds: vec![VarKind::NonNeg; num_vars],
            eq: Vec::new(),
            le: Vec::new(),
            objective: vec![BigRational::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    fn check(&self) -> Result<(), ExactError> {
        let n = self.num_vars();
        if self.objective.len() != n
            || self.eq.iter().any(|(r, _)| r.len() != n)
            || self.le.iter().any(|(r, _)| r.len() != n)
        {
            return Err(ExactError::Dimension(format!(
                "linear program rows must have {n} entries"
            )));
        }
        Ok(())
    }
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &k * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `cost·y` over the current basis; `allowed` masks columns
    /// that may enter. Returns false when unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            // reduced cost of column j: cost_j - Σ cost_{basis_i} t[i][j]
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        rc -= &cost[b] * &self.t[i][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.cols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

pub fn lp_optimize(lp: &LinearProgram) -> Result<LpOutcome, ExactError> {
    lp.check()?;
    let n = lp.num_vars();
    // column layout: for each var, one column (nonneg) or two (free: +, -);
    // then one slack per `le` row; then one artificial per row
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut cols = 0;
    for k in &lp.kinds {
        match k {
            VarKind::NonNeg => {
                var_cols.push((cols, None));
                cols += 1;
            }
            VarKind::Free => {
                var_cols.push((cols, Some(cols + 1)));
                cols += 2;
            }
        }
    }
    let slack_start = cols;
    cols += lp.le.len();
    let structural = cols;
    let m = lp.eq.len() + lp.le.len();
    let art_start = cols;
    cols += m;

    let mut t = Vec::with_capacity(m);
    let rows = lp
        .eq
        .iter()
        .map(|r| (r, None))
        .chain(lp.le.iter().enumerate().map(|(i, r)| (r, Some(slack_start + i))));
    for (ri, ((coef, rhs), slack)) in rows.enumerate() {
        let mut row = vec![BigRational::zero(); cols + 1];
        for (v, a) in coef.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (p, neg) = var_cols[v];
            row[p] = a.clone();
            if let Some(q) = neg {
                row[q] = -a.clone();
            }
        }
        if let Some(s) = slack {
            row[s] = BigRational::one();
        }
        row[cols] = rhs.clone();
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        row[art_start + ri] = BigRational::one();
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (art_start..art_start + m).collect(),
        cols,
    };

    // phase 1
    let mut cost1 = vec![BigRational::zero(); cols];
    for c in cost1.iter_mut().skip(art_start) {
        *c = -BigRational::one();
    }
    let all = vec![true; cols];
    tab.optimize(&cost1, &all);
    let infeas: BigRational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art_start)
        .map(|(i, _)| tab.t[i][cols].clone())
        .sum();
    if infeas.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }
    // drive zero-valued artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= art_start {
            if let Some(c) = (0..structural).find(|&c| !tab.t[i][c].is_zero()) {
                tab.pivot(i, c);
                i += 1;
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    // phase 2
    let mut cost2 = vec![BigRational::zero(); cols];
    for (v, c) in lp.objective.iter().enumerate() {
        let (p, neg) = var_cols[v];
        cost2[p] = c.clone();
        if let Some(q) = neg {
            cost2[q] = -c.clone();
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|c| c < structural).collect();
    if !tab.optimize(&cost2, &allowed) {
        return Ok(LpOutcome::Unbounded);
    }
    let mut y = vec![BigRational::zero(); cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.t[i][cols].clone();
    }
    let x: Vec<BigRational> = var_cols
        .iter()
        .map(|&(p, neg)| match neg {
            Some(q) => &y[p] - &y[q],
            None => y[p].clone(),
        })
        .collect();
    let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpOutcome::Optimal { x, value })
}

/// Finds `x` with `A·x = rhs` (or `A·x = 0`), `x_i ≥ 0` for `i ∈ nonneg`, and
/// `Σ_{i∈S} x_i > 0` for every `S` in `strict_positive_sums`.
///
/// Strictness is decided exactly by maximising `s` subject to
/// `Σ_{i∈S} x_i ≥ s` for all `S` and `s ≤ 1`, and checking the optimum is
/// positive.
pub fn lp_feasible(
    equalities: &IntegerMatrix,
    rhs: Option<&[BigInt]>,
    nonneg: &[usize],
    strict_positive_sums: &[Vec<usize>],
) -> Result<Option<Vec<BigRational>>, ExactError> {
    let n = equalities.cols();
    if let Some(b) = rhs {
        if b.len() != equalities.rows() {
            return Err(ExactError::Dimension(format!(
                "{} equations but {} right-hand sides",
                equalities.rows(),
                b.len()
            )));
        }
    }
    if nonneg
        .iter()
        .chain(strict_positive_sums.iter().flatten())
        .any(|&i| i >= n)
    {
        return Err(ExactError::Dimension("variable index out of range".into()));
    }
    let strict = !strict_positive_sums.is_empty();
    let nv = n + usize::from(strict);
    let mut lp = LinearProgram::new(nv);
    lp.kinds = vec![VarKind::Free; nv];
    for &i in nonneg {
        lp.kinds[i] = VarKind::NonNeg;
    }
    for i in 0..equalities.rows() {
        let mut row: Vec<BigRational> = equalities.row(i).iter().map(int_to_rational).collect();
        row.resize(nv, BigRational::zero());
        let b = rhs.map_or_else(BigRational::zero, |b| int_to_rational(&b[i]));
        lp.eq.push((row, b));
    }
    if strict {
        lp.kinds[n] = VarKind::NonNeg;
        for set in strict_positive_sums {
            let mut row = vec![BigRational::zero(); nv];
            for &i in set {
                row[i] -= BigRational::one();
            }
            row[n] = BigRational::one();
            lp.le.push((row, BigRational::zero()));
        }
        let mut cap = vec![BigRational::zero(); nv];
        cap[n] = BigRational::one();
        lp.le.push((cap, BigRational::one()));
        lp.objective[n] = BigRational::one();
    }
    match lp_optimize(&lp)? {
        LpOutcome::Optimal { mut x, value } => {
            if strict && !value.is_positive() {
                return Ok(None);
            }
            x.truncate(n);
            Ok(Some(x))
        }
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("objective is capped"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::to_bigint_vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn verify(
        a: &IntegerMatrix,
        rhs: Option<&[BigInt]>,
        nonneg: &[usize],
        strict: &[Vec<usize>],
        x: &[BigRational],
    ) {
        for i in 0..a.rows() {
            let s: BigRational = a.row(i).iter().zip(x).map(|(c, v)| int_to_rational(c) * v).sum();
            let b = rhs.map_or_else(BigRational::zero, |b| int_to_rational(&b[i]));
            assert_eq!(s, b);
        }
        for &i in nonneg {
            assert!(!x[i].is_negative());
        }
        for set in strict {
            let s: BigRational = set.iter().map(|&i| x[i].clone()).sum();
            assert!(s.is_positive());
        }
    }

    #[test]
    fn equal_pair_is_feasible() {
        let a = IntegerMatrix::from_rows(&[vec![1, -1]]);
        let x = lp_feasible(&a, None, &[0, 1], &[vec![0]]).unwrap().unwrap();
        verify(&a, None, &[0, 1], &[vec![0]], &x);
        assert_eq!(x[0], x[1]);
    }

    #[test]
    fn opposite_pair_is_infeasible() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1]]);
        assert!(lp_feasible(&a, None, &[0, 1], &[vec![0]]).unwrap().is_none());
    }

    #[test]
    fn affine_rhs() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1, 1]]);
        let rhs = to_bigint_vec(&[1i64]);
        let strict = vec![vec![0], vec![1], vec![2]];
        let x = lp_feasible(&a, Some(&rhs), &[0, 1, 2], &strict).unwrap().unwrap();
        verify(&a, Some(&rhs), &[0, 1, 2], &strict, &x);
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1]]);
        assert!(lp_feasible(&a, None, &[5], &[]).is_err());
    }

    #[test]
    fn optimum_and_unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.le.push((vec![q(1, 1), q(2, 1)], q(4, 1)));
        lp.le.push((vec![q(3, 1), q(1, 1)], q(6, 1)));
        lp.objective = vec![q(1, 1), q(1, 1)];
        // vertex (8/5, 6/5)
        assert_eq!(lp_optimize(&lp).unwrap().value(), Some(&q(14, 5)));
        let mut lp = LinearProgram::new(2);
        lp.le.push((vec![q(1, 1), q(-1, 1)], q(1, 1)));
        lp.objective = vec![q(1, 1), q(0, 1)];
        assert_eq!(lp_optimize(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, cycles under the textbook largest-coefficient rule
        let mut lp = LinearProgram::new(4);
        lp.le.push((vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1)], q(0, 1)));
        lp.le.push((vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1)], q(0, 1)));
        lp.le.push((vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)], q(1, 1)));
        lp.objective = vec![q(3, 4), q(-20, 1), q(1, 2), q(-6, 1)];
        assert_eq!(lp_optimize(&lp).unwrap().value(), Some(&q(5, 4)));
    }

    /// Brute-force search over integer points in `[0, 6]^n`; a homogeneous
    /// row with entries in `[-3, 3]` has a witness there whenever it is feasible.
    fn grid_feasible(a: &IntegerMatrix, strict: &[Vec<usize>]) -> bool {
        let n = a.cols();
        let vals: Vec<BigRational> = (0..=6).map(|k| q(k, 1)).collect();
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<BigRational> = idx.iter().map(|&i| vals[i].clone()).collect();
            let eq_ok = (0..a.rows()).all(|r| {
                a.row(r)
                    .iter()
                    .zip(&x)
                    .map(|(c, v)| int_to_rational(c) * v)
                    .sum::<BigRational>()
                    .is_zero()
            });
            let strict_ok = strict
                .iter()
                .all(|s| s.iter().map(|&i| x[i].clone()).sum::<BigRational>().is_positive());
            if eq_ok && strict_ok {
                return true;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < vals.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_grid_search(n in 2usize..=3, coeffs in proptest::collection::vec(-3i64..=3, 3), sel in proptest::collection::vec(0usize..3, 1..3)) {
            let a = IntegerMatrix::from_rows(&[coeffs[..n].to_vec()]);
            let strict: Vec<Vec<usize>> = sel.iter().map(|&i| vec![i % n]).collect();
            let nonneg: Vec<usize> = (0..n).collect();
            let res = lp_feasible(&a, None, &nonneg, &strict).unwrap();
            if let Some(x) = &res {
                verify(&a, None, &nonneg, &strict, x);
            }
            // homogeneous system: feasibility is scale invariant, so a small
            // grid suffices whenever a solution exists
            prop_assert_eq!(res.is_some(), grid_feasible(&a, &strict));
        }
    }
}
