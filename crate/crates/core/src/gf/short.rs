use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GfError, Poly};

/// `P(x) / Π_b (1 − x^b)^{m_b}`.
///
/// The denominator is kept as a factor multiset. Construction always
/// normalizes: factors of the numerator that cancel against a stored factor
/// (or reduce `1 − x^b` to `1 − x^d` for `d | b`) are removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortGF {
    numerator: Poly,
    denominator: BTreeMap<usize, u32>,
}

impl ShortGF {
    pub fn new(numerator: Poly, factors: impl IntoIterator<Item = (usize, u32)>) -> Result<Self, GfError> {
        let mut denominator = BTreeMap::new();
        for (b, m) in factors {
            if b == 0 {
                return Err(GfError::ZeroDenominator);
            }
            if m > 0 {
                *denominator.entry(b).or_insert(0) += m;
            }
        }
        Ok(gf_normalize(&ShortGF {
            numerator,
            denominator,
        }))
    }

    pub fn zero() -> Self {
        ShortGF {
            numerator: Poly::zero(),
            denominator: BTreeMap::new(),
        }
    }

    pub fn polynomial(p: Poly) -> Self {
        ShortGF {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// Factor multiset `b ↦ multiplicity` of the denominator.
    pub fn denominator(&self) -> &BTreeMap<usize, u32> {
        &self.denominator
    }

    pub fn denominator_poly(&self) -> Poly {
        let mut out = Poly::one();
        for (&b, &m) in &self.denominator {
            out = &out * &Poly::one_minus_x_pow(b).pow(m);
        }
        out
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator.iter().map(|(&b, &m)| b * m as usize).sum()
    }

    /// Total multiplicity of denominator factors; the pole order at `x = 1`.
    pub fn pole_order(&self) -> u32 {
        self.denominator.values().sum()
    }

    /// Least common multiple of the denominator exponents `b`.
    pub fn period(&self) -> usize {
        self.denominator.keys().fold(1, |acc, &b| acc.lcm(&b))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        gf_expand(self, n)
    }

    pub fn scale(&self, c: &BigRational) -> ShortGF {
        gf_normalize(&ShortGF {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        })
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> ShortGF {
        ShortGF {
            numerator: &self.numerator * &Poly::monomial(BigRational::one(), k),
            denominator: self.denominator.clone(),
        }
    }

    /// `P = [c0,c1,...]; Q = [(b,mult),...]`.
    pub fn to_text(&self) -> String {
        let p: Vec<String> = self.numerator.coeffs().iter().map(|c| c.to_string()).collect();
        let q: Vec<String> = self
            .denominator
            .iter()
            .map(|(b, m)| format!("({b},{m})"))
            .collect();
        format!("P = [{}]; Q = [{}]", p.join(","), q.join(","))
    }
}

impl fmt::Display for ShortGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let parts: Vec<String> = self
            .denominator
            .iter()
            .map(|(&b, &m)| {
                let base = if b == 1 {
                    "(1 - x)".to_string()
                } else {
                    format!("(1 - x^{b})")
                };
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        write!(f, "({}) / ({})", self.numerator, parts.join(" "))
    }
}

impl FromStr for ShortGF {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, GfError> {
        let bad = |m: &str| GfError::Parse(format!("{m} in `{s}`"));
        let (p_part, q_part) = s.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let list = |part: &str, key: &str| -> Result<String, GfError> {
            let part = part.trim();
            let rest = part
                .strip_prefix(key)
                .map(str::trim_start)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(&format!("expected `{key} =`")))?
                .trim();
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| bad("expected a bracketed list"))?;
            Ok(inner.to_string())
        };
        let p_inner = list(p_part, "P")?;
        let mut coeffs = Vec::new();
        for tok in p_inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            coeffs.push(parse_rational(tok).ok_or_else(|| bad(&format!("bad coefficient `{tok}`")))?);
        }
        let q_inner = list(q_part, "Q")?;
        let mut factors = Vec::new();
        let mut rest = q_inner.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed `(`"))?;
            let (b, m) = open[..close]
                .split_once(',')
                .ok_or_else(|| bad("factor needs `(b,mult)`"))?;
            let b: usize = b.trim().parse().map_err(|_| bad("bad factor exponent"))?;
            let m: u32 = m.trim().parse().map_err(|_| bad("bad multiplicity"))?;
            factors.push((b, m));
            rest = open[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        ShortGF::new(Poly::new(coeffs), factors)
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => tok.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Cancels every stored denominator factor (or part of one) that divides the
/// numerator.
pub fn gf_normalize(g: &ShortGF) -> ShortGF {
    if g.numerator.is_zero() {
        return ShortGF::zero();
    }
    let mut num = g.numerator.clone();
    let mut den = g.denominator.clone();
    loop {
        let mut changed = false;
        let keys: Vec<usize> = den.keys().copied().collect();
        'factors: for b in keys {
            while den.get(&b).copied().unwrap_or(0) > 0 {
                if let Some(qt) = num.exact_div(&Poly::one_minus_x_pow(b)) {
                    num = qt;
                    decrement(&mut den, b);
                    changed = true;
                    continue;
                }
                // (1 - x^b) = (1 - x^d)·(1 + x^d + ... + x^{b-d})
                for d in (1..b).filter(|d| b % d == 0) {
                    let cyc = Poly::one_minus_x_pow(b)
                        .exact_div(&Poly::one_minus_x_pow(d))
                        .expect("1 - x^d divides 1 - x^b");
                    if let Some(qt) = num.exact_div(&cyc) {
                        num = qt;
                        decrement(&mut den, b);
                        *den.entry(d).or_insert(0) += 1;
                        changed = true;
                        continue 'factors;
                    }
                }
                break;
            }
        }
        if !changed {
            break;
        }
    }
    ShortGF {
        numerator: num,
        denominator: den,
    }
}

fn decrement(den: &mut BTreeMap<usize, u32>, b: usize) {
    if let Some(m) = den.get_mut(&b) {
        *m -= 1;
        if *m == 0 {
            den.remove(&b);
        }
    }
}

pub fn gf_add(a: &ShortGF, b: &ShortGF) -> ShortGF {
    let mut den = a.denominator.clone();
    for (&k, &m) in &b.denominator {
        let e = den.entry(k).or_insert(0);
        *e = (*e).max(m);
    }
    let cofactor = |g: &ShortGF| {
        let mut out = Poly::one();
        for (&k, &m) in &den {
            let have = g.denominator.get(&k).copied().unwrap_or(0);
            out = &out * &Poly::one_minus_x_pow(k).pow(m - have);
        }
        out
    };
    let num = &(&a.numerator * &cofactor(a)) + &(&b.numerator * &cofactor(b));
    gf_normalize(&ShortGF {
        numerator: num,
        denominator: den,
    })
}

/// First `n` power series coefficients.
pub fn gf_expand(g: &ShortGF, n: usize) -> Vec<BigRational> {
    g.numerator.series_div(&g.denominator_poly(), n)
}

/// Whether `num / den` has a short generating function: after removing
/// `gcd(num, den)`, every root of the denominator must be a root of unity, so
/// that it divides `(1 − x^M)^k` for `M` the lcm of all orders that can occur.
pub fn is_short(num: &Poly, den: &Poly) -> bool {
    assert!(!den.is_zero(), "zero denominator");
    let g = num.gcd(den);
    let d = if num.is_zero() {
        Poly::one()
    } else {
        den.exact_div(&g).expect("gcd divides")
    };
    let Some(k) = d.degree() else { return true };
    if k == 0 {
        return true;
    }
    if d.coeff(0).is_zero() {
        return false;
    }
    // any primitive m-th root with phi(m) <= k satisfies m <= 2k^2
    let bound = 2 * k * k + 2;
    let mut m_lcm = BigInt::one();
    for m in 1..=bound {
        if totient(m as u64) as usize <= k {
            m_lcm = m_lcm.lcm(&BigInt::from(m));
        }
    }
    let m: u64 = match u64::try_from(&m_lcm) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let x = Poly::from_ints(&[0, 1]);
    let xm = x.pow_mod(m, &d);
    let base = &Poly::one() - &xm;
    base.pow_mod(k as u64, &d).is_zero()
}

fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}
