use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<T: Copy + Into<BigInt>>(coeffs: &[T]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(q(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `1 − x^b`.
    pub fn one_minus_x_pow(b: usize) -> Self {
        let mut v = vec![BigRational::zero(); b + 1];
        v[0] = q(1);
        v[b] -= q(1);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (qt, r) = self.div_rem(d);
        r.is_zero().then_some(qt)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &Poly) -> Poly {
        let mut base = self.div_rem(m).1;
        let mut out = Poly::one().div_rem(m).1;
        while k > 0 {
            if k & 1 == 1 {
                out = (&out * &base).div_rem(m).1;
            }
            base = (&base * &base).div_rem(m).1;
            k >>= 1;
        }
        out
    }

    /// Power series coefficients of `self / den` up to `x^(n-1)`.
    /// Requires `den(0) ≠ 0`.
    pub fn series_div(&self, den: &Poly, n: usize) -> Vec<BigRational> {
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "denominator vanishes at zero");
        let inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..den.coeffs.len().min(k + 1) {
                if !den.coeffs[j].is_zero() {
                    acc -= &den.coeffs[j] * &out[k - j];
                }
            }
            out.push(acc * &inv);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl fmt::Display for Poly {
    /// Human-readable form such as `-x^2 + 2x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::new(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_ints(&[1, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn series_of_geometric() {
        let s = Poly::one().series_div(&Poly::one_minus_x_pow(1), 5);
        assert!(s.iter().all(|c| c.is_one()));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = Poly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|x| (q(x), p.eval(&q(x)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[0, 2, -1]).to_string(), "-x^2 + 2x");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
