use num_rational::BigRational;
use num_traits::Zero;

use super::CountError;
use crate::gf::{Poly, ShortGF};

/// Search space for [`fit_short_gf`].
#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Exponents `d` of base factors `1 − x^d`, usually the ray degrees.
    pub base: Vec<usize>,
    /// Up to this many extra factors `1 − x^b` are tried on top of the base.
    pub max_extra_factors: usize,
    /// Largest `b` for an extra factor.
    pub max_extra_exponent: usize,
    /// Allowed excess of `deg P` over `deg Q`.
    pub slack: usize,
    /// Terms beyond the numerator degree that must be reproduced.
    pub guard: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            base: Vec::new(),
            max_extra_factors: 4,
            max_extra_exponent: 4,
            slack: 2,
            guard: 10,
        }
    }
}

fn multisets(max_len: usize, max_val: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &frontier {
            let lo = m.last().copied().unwrap_or(1);
            for b in lo..=max_val {
                let mut m2: Vec<usize> = m.clone();
                m2.push(b);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Finds `P/Q` whose expansion equals `coeffs` (indexed from `x^0`).
///
/// Denominators `Q = Π (1 − x^d)` are tried in order of increasing degree;
/// `P` is read off from `coeffs·Q` and accepted only when `coeffs·Q` vanishes
/// on every supplied term past `deg P`, of which there must be at least
/// `guard`.
pub fn fit_short_gf(coeffs: &[BigRational], opts: &FitOptions) -> Result<ShortGF, CountError> {
    let mut candidates: Vec<Vec<usize>> = multisets(opts.max_extra_factors, opts.max_extra_exponent)
        .into_iter()
        .map(|mut extra| {
            extra.extend(opts.base.iter().copied());
            extra.sort_unstable();
            extra
        })
        .collect();
    candidates.sort_by(|a, b| {
        let da: usize = a.iter().sum();
        let db: usize = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    candidates.dedup();
    let series = Poly::new(coeffs.to_vec());
    let mut tried = false;
    for factors in candidates {
        if factors.contains(&0) {
            continue;
        }
        let mut q = Poly::one();
        for &b in &factors {
            q = &q * &Poly::one_minus_x_pow(b);
        }
        let deg_q = q.degree().unwrap_or(0);
        let deg_p = deg_q + opts.slack;
        if coeffs.len() < deg_p + 1 + opts.guard {
            continue;
        }
        tried = true;
        let prod = &series * &q;
        if (deg_p + 1..coeffs.len()).any(|k| !prod.coeff(k).is_zero()) {
            continue;
        }
        let num = Poly::new((0..=deg_p).map(|k| prod.coeff(k)).collect());
        let g = ShortGF::new(num, factors.iter().map(|&b| (b, 1)))?;
        if g.expand(coeffs.len()) != coeffs {
            return Err(CountError::Invalid("fitted series fails re-expansion".into()));
        }
        return Ok(g);
    }
    Err(CountError::NoFit(if tried {
        format!(
            "no denominator within budget reproduces all {} terms",
            coeffs.len()
        )
    } else {
        format!("{} terms are too few for any candidate denominator", coeffs.len())
    }))
}
