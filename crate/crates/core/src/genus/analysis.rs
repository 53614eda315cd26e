use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::arith::{divisor_sum, mobius_invert_i128, ArithmeticFunction};
use super::series::smooth;
use crate::counting::{fit_short_gf, CountError, FitOptions};
use crate::gf::{to_quasipolynomial, QuasiPolynomial, ShortGF};

/// Fewest terms for which a regularity fit is attempted.
pub const MIN_REGULARITY_TERMS: usize = 30;

#[derive(Clone, Debug)]
pub enum Regularity {
    /// `1 ∗ ã` has the short generating function `lambert`, whose
    /// coefficients are `p(n)`.
    Regular {
        divisor_sums: ArithmeticFunction,
        lambert: ShortGF,
        p: QuasiPolynomial,
    },
    /// No short generating function was found with the given terms and fit
    /// budget. This says nothing about larger budgets.
    NoFitWithinBudget { terms: usize, reason: String },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

pub fn regularity_test(a: &ArithmeticFunction, fit: &FitOptions) -> Result<Regularity, CountError> {
    let terms = a.horizon();
    if terms < MIN_REGULARITY_TERMS {
        return Ok(Regularity::NoFitWithinBudget {
            terms,
            reason: format!("only {terms} terms; at least {MIN_REGULARITY_TERMS} are needed"),
        });
    }
    let divisor_sums = divisor_sum(a);
    let coeffs: Vec<BigRational> = std::iter::once(BigRational::zero())
        .chain(divisor_sums.values.iter().cloned())
        .collect();
    let lambert = match fit_short_gf(&coeffs, fit) {
        Ok(g) => g,
        Err(CountError::NoFit(reason)) => return Ok(Regularity::NoFitWithinBudget { terms, reason }),
        Err(e) => return Err(e),
    };
    let mut p = to_quasipolynomial(&lambert)?;
    // the series starts at n = 1
    p.transient.retain(|(n, _)| *n > 0);
    if let Some(n) = (1..=terms).find(|&n| p.eval(n) != divisor_sums.values[n - 1]) {
        return Err(CountError::Invalid(format!(
            "the fitted quasi-polynomial misses 1 ∗ ã at n = {n}"
        )));
    }
    Ok(Regularity::Regular {
        divisor_sums,
        lambert,
        p,
    })
}

/// `ζ(s)` for integer `s ≥ 2` by Euler–Maclaurin summation.
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta is evaluated only for s >= 2");
    const N: u32 = 10;
    // B_2, B_4, …, B_14
    const BERNOULLI: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let s_f = f64::from(s);
    let n = f64::from(N);
    let mut sum: f64 = (1..N).map(|k| f64::from(k).powf(-s_f)).sum();
    sum += n.powf(1.0 - s_f) / (s_f - 1.0) + 0.5 * n.powf(-s_f);
    // rising factorial s(s+1)…(s+2j−2) / (2j)!
    let mut factor = s_f / 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j as f64 + 1.0;
        if j > 1.0 {
            factor *= (s_f + 2.0 * j - 3.0) * (s_f + 2.0 * j - 2.0) / ((2.0 * j - 1.0) * (2.0 * j));
        }
        sum += b * factor * n.powf(-s_f - 2.0 * j + 1.0);
    }
    sum
}

/// Limit of `ā(n)/n^{r+1}` when `1 ∗ ã = p` has degree `r ≥ 1` and a
/// leading coefficient `c_r` common to all residue classes:
/// `c_r / ((r + 1) ζ(r + 1))`.
pub fn areg_limit(p: &QuasiPolynomial) -> Result<f64, CountError> {
    let (r, c) = leading_term(p)?;
    let c = c.to_f64().ok_or(CountError::Overflow)?;
    Ok(c / (r as f64 + 1.0) / zeta(r as u32 + 1))
}

fn leading_term(p: &QuasiPolynomial) -> Result<(usize, BigRational), CountError> {
    let r = p.degree().unwrap_or(0);
    if r == 0 {
        return Err(CountError::Unsupported(
            "degree 0: ζ has a pole at 1 and the limit is read as 0".into(),
        ));
    }
    let c = p.polys[0].coeff(r);
    if p.polys.iter().any(|f| f.coeff(r) != c) {
        return Err(CountError::Unsupported(
            "the leading coefficient differs between residue classes".into(),
        ));
    }
    Ok((r, c))
}

#[derive(Clone, Debug)]
pub struct AregCheck {
    pub limit: f64,
    pub n: usize,
    /// `ā(n)/n^{r+1}` with `ã = μ ∗ p`.
    pub empirical: f64,
    pub relative_difference: f64,
}

/// Compares [`areg_limit`] with `ā(n)/n^{r+1}` computed from `ã = μ ∗ p`.
pub fn areg_check(p: &QuasiPolynomial, n: usize) -> Result<AregCheck, CountError> {
    let limit = areg_limit(p)?;
    let (r, _) = leading_term(p)?;
    let values: Vec<BigRational> = (1..=n).map(|k| p.eval(k)).collect();
    let den = values
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let ints = values
        .iter()
        .map(|v| {
            (v.numer() * (&den / v.denom()))
                .to_i128()
                .ok_or(CountError::Overflow)
        })
        .collect::<Result<Vec<i128>, _>>()?;
    let total: i128 = mobius_invert_i128(&ints).iter().sum();
    let empirical = total as f64 / den.to_f64().ok_or(CountError::Overflow)? / (n as f64).powi(r as i32 + 1);
    Ok(AregCheck {
        limit,
        n,
        empirical,
        relative_difference: (empirical - limit).abs() / limit,
    })
}

#[derive(Clone, Debug)]
pub struct SlopeEstimate {
    /// Rounded log-log slope.
    pub s: i32,
    pub slope: f64,
    /// `exp(mean(log ā − s log n))` over the tail.
    pub constant: f64,
    /// Root-mean-square residual of the least-squares line.
    pub residual: f64,
    /// `(n, ā(n)/n^s)` over the tail.
    pub ratios: Vec<(usize, f64)>,
}

/// Least-squares slope of `log ā` against `log n` for `n > burn_in`.
pub fn slope_estimate(abar: &[u64], burn_in: usize) -> Result<SlopeEstimate, CountError> {
    let tail: Vec<(usize, f64)> = abar
        .iter()
        .enumerate()
        .map(|(i, &v)| (i + 1, v as f64))
        .filter(|&(n, v)| n > burn_in && v > 0.0)
        .collect();
    if tail.len() < 2 {
        return Err(CountError::Invalid(
            "fewer than two nonzero values after the burn-in".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = tail.iter().map(|&(n, v)| ((n as f64).ln(), v.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    let s = slope.round() as i32;
    let constant = (pts.iter().map(|p| p.1 - f64::from(s) * p.0).sum::<f64>() / m).exp();
    let ratios = tail.iter().map(|&(n, v)| (n, v / (n as f64).powi(s))).collect();
    Ok(SlopeEstimate {
        s,
        slope,
        constant,
        residual,
        ratios,
    })
}

/// `log_n,log_abar` rows for the nonzero entries of `ā`.
pub fn loglog_csv(abar: &[u64]) -> String {
    let mut out = String::from("log_n,log_abar\n");
    for (i, &v) in abar.iter().enumerate().filter(|(_, &v)| v > 0) {
        let _ = writeln!(out, "{:.6},{:.6}", ((i + 1) as f64).ln(), (v as f64).ln());
    }
    out
}

/// Minimal SVG scatter plot of `points`.
pub fn svg_scatter(points: &[(f64, f64)], x_label: &str, y_label: &str) -> String {
    const W: f64 = 480.0;
    const H: f64 = 360.0;
    const M: f64 = 40.0;
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = |a: f64, b: f64| if b > a { b - a } else { 1.0 };
    let (sx, sy) = (span(x0, x1), span(y0, y1));
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <line x1=\"{M}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n\
         <line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{}\" stroke=\"black\"/>\n\
         <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n\
         <text x=\"12\" y=\"{}\" transform=\"rotate(-90 12 {})\" text-anchor=\"middle\">{y_label}</text>\n",
        H - M,
        W - M,
        H - M,
        H - M,
        W / 2.0,
        H - 8.0,
        H / 2.0,
        H / 2.0
    );
    for &(x, y) in points {
        let px = M + (x - x0) / sx * (W - 2.0 * M);
        let py = H - M - (y - y0) / sy * (H - 2.0 * M);
        let _ = writeln!(
            out,
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2\" fill=\"steelblue\"/>"
        );
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub fit: FitOptions,
    pub burn_in: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            fit: FitOptions::default(),
            burn_in: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenusAnalysis {
    pub terms: usize,
    pub regularity: Regularity,
    pub slope: Option<SlopeEstimate>,
    pub limit: Option<f64>,
}

/// Regularity, Lambert series, slope and limit for a genus sequence `ã`.
pub fn analyze_genus(a: &[u64], opts: &AnalyzeOptions) -> Result<GenusAnalysis, CountError> {
    let f = ArithmeticFunction::from_ints(a.iter().map(|&v| v as i64));
    let regularity = regularity_test(&f, &opts.fit)?;
    let slope = slope_estimate(&smooth(a), opts.burn_in).ok();
    let limit = match &regularity {
        Regularity::Regular { p, .. } => areg_limit(p).ok(),
        Regularity::NoFitWithinBudget { .. } => None,
    };
    Ok(GenusAnalysis {
        terms: a.len(),
        regularity,
        slope,
        limit,
    })
}

impl GenusAnalysis {
    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "terms: {}", self.terms);
        match &self.regularity {
            Regularity::Regular { lambert, p, .. } => {
                let _ = writeln!(s, "regular: yes");
                let _ = writeln!(s, "p(n): {p}");
                let _ = writeln!(s, "lambert: {lambert}");
            }
            Regularity::NoFitWithinBudget { reason, .. } => {
                let _ = writeln!(s, "regular: no fit within budget");
                let _ = writeln!(s, "reason: {reason}");
            }
        }
        if let Some(l) = self.limit {
            let _ = writeln!(s, "limit abar(n)/n^(r+1): {l:.12}");
        }
        match &self.slope {
            Some(e) => {
                let _ = writeln!(s, "s: {}", e.s);
                let _ = writeln!(s, "slope: {:.6}", e.slope);
                let _ = writeln!(s, "constant: {:.6}", e.constant);
                let _ = writeln!(s, "residual: {:.6}", e.residual);
            }
            None => {
                let _ = writeln!(s, "s: undetermined");
            }
        }
        s
    }
}
