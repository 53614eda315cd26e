use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::interpolate;
use super::{GfError, Poly, ShortGF};

/// `s(n) = f_{n mod L}(n)` except at finitely many listed `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: usize,
    /// `polys[r]` is the polynomial in `n` used when `n ≡ r (mod period)`.
    pub polys: Vec<Poly>,
    /// `(n, s(n))` where the sequence deviates from the polynomials.
    pub transient: Vec<(usize, BigRational)>,
}

impl QuasiPolynomial {
    pub fn new(polys: Vec<Poly>) -> Result<Self, GfError> {
        if polys.is_empty() {
            return Err(GfError::Invalid(
                "a quasi-polynomial needs period at least 1".into(),
            ));
        }
        Ok(QuasiPolynomial {
            period: polys.len(),
            polys,
            transient: Vec::new(),
        })
    }

    pub fn eval(&self, n: usize) -> BigRational {
        if let Some((_, v)) = self.transient.iter().find(|(m, _)| *m == n) {
            return v.clone();
        }
        self.polys[n % self.period].eval(&BigRational::from_integer(n.into()))
    }

    /// Largest degree among the residue polynomials, `None` if all vanish.
    pub fn degree(&self) -> Option<usize> {
        self.polys.iter().filter_map(Poly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(Poly::is_zero)
    }
}

impl fmt::Display for QuasiPolynomial {
    /// `n + 1` for period 1, otherwise one `n ≡ r: f_r(n)` clause per class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| p.to_string().replace('x', "n");
        if self.period == 1 {
            write!(f, "{}", show(&self.polys[0]))?;
        } else {
            for (r, p) in self.polys.iter().enumerate() {
                if r > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "n ≡ {r} (mod {}): {}", self.period, show(p))?;
            }
        }
        for (n, v) in &self.transient {
            write!(f, "; except n = {n}: {v}")?;
        }
        Ok(())
    }
}

/// Recovers the quasi-polynomial behind a short generating function by
/// interpolating each residue class of a deep enough expansion.
pub fn to_quasipolynomial(g: &ShortGF) -> Result<QuasiPolynomial, GfError> {
    let period = g.period();
    let deg_p = g.numerator().degree().unwrap_or(0);
    let deg_q = g.denominator_degree();
    let pole = g.pole_order() as usize;
    let start = if g.numerator().is_zero() || deg_p < deg_q {
        0
    } else {
        deg_p - deg_q + 1
    };
    let samples = pole.max(1);
    let depth = start + 3 * period * (samples + 1) + deg_p + period;
    let coeffs = g.expand(depth);
    let mut polys = Vec::with_capacity(period);
    for r in 0..period {
        let pts: Vec<(BigRational, BigRational)> = (start..depth)
            .filter(|n| n % period == r)
            .map(|n| (BigRational::from_integer(n.into()), coeffs[n].clone()))
            .collect();
        if pts.len() < samples + 2 {
            return Err(GfError::Interpolation(format!(
                "residue class {r} has too few samples"
            )));
        }
        let f = interpolate(&pts[..samples]);
        if let Some((x, y)) = pts[samples..].iter().find(|(x, y)| f.eval(x) != *y) {
            return Err(GfError::Interpolation(format!(
                "residue {r} disagrees at n = {x}: expected {y}, polynomial gives {}",
                f.eval(x)
            )));
        }
        polys.push(f);
    }
    let mut q = QuasiPolynomial {
        period,
        polys,
        transient: Vec::new(),
    };
    for (n, c) in coeffs.iter().enumerate().take(start) {
        if q.eval(n) != *c {
            q.transient.push((n, c.clone()));
        }
    }
    Ok(q)
}

/// Growth of the partial sums `s̄(n) = Σ_{k ≤ n} s(k)` as `c·n^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsymptoticProfile {
    Zero,
    Power { d: u32, c: BigRational },
}

/// Leading term of the partial sums of a nonnegative quasi-polynomial:
/// `d = e + 1` and `c = (Σ_ℓ c_ℓ) / (d·L)` where `c_ℓ` is the coefficient of
/// `n^e` in `f_ℓ` and `e` the maximal degree.
pub fn smooth_asymptotics(q: &QuasiPolynomial) -> Result<AsymptoticProfile, GfError> {
    let start = q.transient.iter().map(|(n, _)| n + 1).max().unwrap_or(0);
    let window = 4 * q.period * (q.degree().unwrap_or(0) + 2);
    if let Some(n) = (start..start + window).find(|&n| q.eval(n).is_negative()) {
        return Err(GfError::Invalid(format!("negative value at n = {n}")));
    }
    let Some(e) = q.degree() else {
        return Ok(AsymptoticProfile::Zero);
    };
    let leads: Vec<BigRational> = q.polys.iter().map(|f| f.coeff(e)).collect();
    if leads.iter().any(Signed::is_negative) {
        return Err(GfError::Invalid(
            "a residue class has a negative leading coefficient".into(),
        ));
    }
    let sum: BigRational = leads.iter().sum();
    if sum.is_zero() {
        return Err(GfError::Invalid("leading coefficients sum to zero".into()));
    }
    let d = e + 1;
    let c = sum / BigRational::from_integer((d * q.period).into());
    Ok(AsymptoticProfile::Power { d: d as u32, c })
}
