use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{int_to_rational, rref};
use super::snf::{integer_kernel_basis, smith_normal_form};
use super::{ExactError, IntegerMatrix};

/// Lattice basis of `span(vectors) ∩ Z^n`.
pub fn saturate(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntegerMatrix::from_rows(vectors);
    let orth = integer_kernel_basis(&m);
    if orth.is_empty() {
        return (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                e
            })
            .collect();
    }
    integer_kernel_basis(&IntegerMatrix::from_rows(&orth))
}

/// Splitting `V(Z) = W(Z) ⊕ L(Z)` together with the projection `T` onto `L`
/// along `W`.
#[derive(Clone, Debug)]
pub struct LatticeDecomposition {
    /// Z-basis of the ambient lattice `V(Z)`, as vectors in `Z^n`.
    pub ambient: Vec<Vec<BigInt>>,
    /// Saturated Z-basis of `W(Z)`.
    pub w: Vec<Vec<BigInt>>,
    /// Z-basis of the complement `L(Z)`.
    pub l: Vec<Vec<BigInt>>,
    /// Maps `V(Z)`-coordinates to `L(Z)`-coordinates; kernel is `W`.
    pub t: IntegerMatrix,
    /// False when the supplied `W` basis generated a proper finite-index
    /// sublattice of `span(W) ∩ V(Z)` and had to be saturated.
    pub input_was_saturated: bool,
    /// `U` from the Smith form: full change of coordinates to the `(W, L)` basis.
    u: IntegerMatrix,
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<BigRational>>,
}

impl LatticeDecomposition {
    pub fn dim(&self) -> usize {
        self.ambient.len()
    }

    /// Coordinates of `x` in the ambient basis; errors if `x ∉ V(Z)`.
    pub fn ambient_coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        let k = self.dim();
        let n = x.len();
        let mut c = vec![BigRational::zero(); k];
        for (i, row) in self.pivot_inverse.iter().enumerate() {
            for (j, &pr) in self.pivot_rows.iter().enumerate() {
                if !x[pr].is_zero() {
                    c[i] += &row[j] * int_to_rational(&x[pr]);
                }
            }
        }
        if c.iter().any(|v| !v.is_integer()) {
            return Err(ExactError::NotInSpan);
        }
        let c: Vec<BigInt> = c.into_iter().map(|v| v.to_integer()).collect();
        for idx in 0..n {
            let recon: BigInt = self.ambient.iter().zip(&c).map(|(b, ci)| &b[idx] * ci).sum();
            if recon != x[idx] {
                return Err(ExactError::NotInSpan);
            }
        }
        Ok(c)
    }

    /// `T(x)` in `L(Z)`-coordinates.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        let c = self.ambient_coords(x)?;
        self.t.mul_vec(&c)
    }

    /// `T(x)` as a vector of `Z^n`.
    pub fn project_ambient(&self, x: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        let lc = self.project(x)?;
        let n = x.len();
        let mut out = vec![BigInt::zero(); n];
        for (coef, basis) in lc.iter().zip(&self.l) {
            for (o, b) in out.iter_mut().zip(basis) {
                *o += coef * b;
            }
        }
        Ok(out)
    }

    /// `W(Z)`-coordinates of the `W` component of `x`.
    pub fn w_component(&self, x: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        let c = self.ambient_coords(x)?;
        let full = self.u.mul_vec(&c)?;
        Ok(full[..self.w.len()].to_vec())
    }
}

fn combine(basis: &[Vec<BigInt>], coeffs: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Integer inverse of a unimodular matrix.
pub(crate) fn unimodular_inverse(u: &IntegerMatrix) -> IntegerMatrix {
    let k = u.rows();
    let mut aug: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row: Vec<BigRational> = u.row(i).iter().map(int_to_rational).collect();
        row.extend((0..k).map(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        aug.push(row);
    }
    let red = rref(&aug, 2 * k);
    let mut inv = IntegerMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = &red.rows[i][k + j];
            debug_assert!(v.is_integer());
            inv[(i, j)] = v.to_integer();
        }
    }
    inv
}

/// Splits the lattice `V(Z)` (given by a Z-basis `ambient`) as
/// `W(Z) ⊕ L(Z)` where `W = span(w_basis)`.
///
/// A non-saturated `w_basis` is saturated automatically; the result records
/// this in [`LatticeDecomposition::input_was_saturated`].
pub fn lattice_complement(
    ambient: &[Vec<BigInt>],
    w_basis: &[Vec<BigInt>],
) -> Result<LatticeDecomposition, ExactError> {
    let k = ambient.len();
    let n = ambient.first().map_or(0, Vec::len);
    if ambient.iter().any(|v| v.len() != n) || w_basis.iter().any(|v| v.len() != n) {
        return Err(ExactError::Dimension("vector lengths differ".into()));
    }
    let brows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| ambient.iter().map(|b| int_to_rational(&b[i])).collect())
        .collect();
    // choose k independent coordinates to solve for ambient coordinates
    let red_t = rref(
        &ambient
            .iter()
            .map(|b| b.iter().map(int_to_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        n,
    );
    if red_t.rank() != k {
        return Err(ExactError::Dependent);
    }
    let pivot_rows = red_t.pivots.clone();
    let sub: Vec<Vec<BigRational>> = pivot_rows.iter().map(|&r| brows[r].clone()).collect();
    let mut aug = Vec::with_capacity(k);
    for (i, row) in sub.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..k).map(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        aug.push(r);
    }
    let inv = rref(&aug, 2 * k);
    let pivot_inverse: Vec<Vec<BigRational>> = inv.rows.iter().map(|r| r[k..].to_vec()).collect();

    let mut dec = LatticeDecomposition {
        ambient: ambient.to_vec(),
        w: Vec::new(),
        l: Vec::new(),
        t: IntegerMatrix::identity(k),
        input_was_saturated: true,
        u: IntegerMatrix::identity(k),
        pivot_rows,
        pivot_inverse,
    };
    let m = w_basis.len();
    if m == 0 {
        dec.l = ambient.to_vec();
        return Ok(dec);
    }
    let wcoords: Vec<Vec<BigInt>> = w_basis
        .iter()
        .map(|w| dec.ambient_coords(w))
        .collect::<Result<_, _>>()?;
    let wm = IntegerMatrix::from_columns(&wcoords, k);
    let snf = smith_normal_form(&wm);
    if snf.rank < m {
        return Err(ExactError::Dependent);
    }
    let uinv = unimodular_inverse(&snf.u);
    let cols: Vec<Vec<BigInt>> = (0..k).map(|j| uinv.column(j)).collect();
    dec.w = cols[..m].iter().map(|c| combine(ambient, c, n)).collect();
    dec.l = cols[m..].iter().map(|c| combine(ambient, c, n)).collect();
    let mut t = IntegerMatrix::zeros(k - m, k);
    for i in m..k {
        for j in 0..k {
            t[(i - m, j)] = snf.u[(i, j)].clone();
        }
    }
    dec.t = t;
    dec.input_was_saturated = snf.invariant_factors()[..m].iter().all(One::is_one);
    dec.u = snf.u;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::to_bigint_vec;
    use rand::{Rng, SeedableRng};

    fn v(x: &[i64]) -> Vec<BigInt> {
        to_bigint_vec(x)
    }

    fn z2() -> Vec<Vec<BigInt>> {
        vec![v(&[1, 0]), v(&[0, 1])]
    }

    fn check_invariants(dec: &LatticeDecomposition) {
        let k = dec.dim();
        // T∘T = T when L-coords are read back as ambient vectors
        for b in &dec.l {
            let lc = dec.project(b).unwrap();
            let back = dec.project_ambient(b).unwrap();
            assert_eq!(&back, b);
            assert_eq!(lc.len(), k - dec.w.len());
        }
        for w in &dec.w {
            assert!(dec.project(w).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn coordinate_axis() {
        let dec = lattice_complement(&z2(), &[v(&[1, 0])]).unwrap();
        assert!(dec.input_was_saturated);
        check_invariants(&dec);
        assert_eq!(dec.project_ambient(&v(&[5, 7])).unwrap(), v(&[0, 7]));
    }

    #[test]
    fn diagonal() {
        let dec = lattice_complement(&z2(), &[v(&[1, 1])]).unwrap();
        check_invariants(&dec);
        // T(a, b) and T(a', b') agree iff b - a = b' - a'
        let p = |a: i64, b: i64| dec.project(&v(&[a, b])).unwrap();
        assert_eq!(p(3, 5), p(0, 2));
        assert_ne!(p(3, 5), p(0, 3));
        // L-coordinate is ±(b - a)
        let c = p(0, 1)[0].clone();
        assert!(c == BigInt::from(1) || c == BigInt::from(-1));
    }

    #[test]
    fn saturation_is_reported() {
        let dec = lattice_complement(&z2(), &[v(&[2, 2])]).unwrap();
        assert!(!dec.input_was_saturated);
        let w = &dec.w[0];
        assert!(w == &v(&[1, 1]) || w == &v(&[-1, -1]));
    }

    #[test]
    fn dependent_input_rejected() {
        assert_eq!(
            lattice_complement(&z2(), &[v(&[1, 1]), v(&[2, 2])]).unwrap_err(),
            ExactError::Dependent
        );
    }

    #[test]
    fn saturate_span() {
        let b = saturate(&[v(&[2, 4, 0]), v(&[0, 0, 3])], 3);
        assert_eq!(b.len(), 2);
        let dec = lattice_complement(&b, &[]).unwrap();
        assert!(dec.ambient_coords(&v(&[1, 2, 1])).is_ok());
        assert!(dec.ambient_coords(&v(&[1, 1, 0])).is_err());
    }

    #[test]
    fn random_vectors_split() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ambient = saturate(
            &[v(&[1, 2, 0, 3, 1]), v(&[0, 1, 1, 1, 0]), v(&[2, 0, 1, 0, 4])],
            5,
        );
        let w = vec![v(&[2, 6, 2, 8, 2])];
        let dec = lattice_complement(&ambient, &w).unwrap();
        assert!(!dec.input_was_saturated);
        for _ in 0..1000 {
            let coeffs: Vec<BigInt> = (0..ambient.len())
                .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
                .collect();
            let x = combine(&ambient, &coeffs, 5);
            let tx = dec.project_ambient(&x).unwrap();
            let diff: Vec<BigInt> = x.iter().zip(&tx).map(|(a, b)| a - b).collect();
            // v - T(v) lies in W(Z): its L-part vanishes and it is in V(Z)
            assert!(dec.project(&diff).unwrap().iter().all(Zero::is_zero));
            let wc = dec.w_component(&diff).unwrap();
            assert_eq!(combine(&dec.w, &wc, 5), diff);
            // T(v) in L(Z) with integer coordinates
            assert_eq!(dec.project_ambient(&tx).unwrap(), tx);
        }
    }
}
