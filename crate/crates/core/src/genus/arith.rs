use num_rational::BigRational;
use num_traits::{One, Zero};

/// Values `f(1), …, f(N)` of an arithmetic function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticFunction {
    pub values: Vec<BigRational>,
}

impl ArithmeticFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        ArithmeticFunction { values }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        ArithmeticFunction::new(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Tabulates `f` on `1..=n`.
    pub fn tabulate(n: usize, f: impl Fn(usize) -> BigRational) -> Self {
        ArithmeticFunction::new((1..=n).map(f).collect())
    }

    /// The constant function 1.
    pub fn one(n: usize) -> Self {
        ArithmeticFunction::new(vec![BigRational::one(); n])
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// Value at `n ≥ 1`.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

/// Prime factorization by trial division, as `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined for n >= 1");
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// `μ(1), …, μ(n)` by a linear sieve.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu.remove(0);
    mu
}

/// `(f ∗ g)(n) = Σ_{d | n} f(n/d) g(d)` on the common horizon.
pub fn dirichlet_convolve(f: &ArithmeticFunction, g: &ArithmeticFunction) -> ArithmeticFunction {
    let n = f.horizon().min(g.horizon());
    let mut out = vec![BigRational::zero(); n];
    for d in 1..=n {
        if g.values[d - 1].is_zero() {
            continue;
        }
        for m in 1..=n / d {
            if !f.values[m - 1].is_zero() {
                out[d * m - 1] += &f.values[m - 1] * &g.values[d - 1];
            }
        }
    }
    ArithmeticFunction::new(out)
}

/// `1 ∗ f`, the coefficients of the Lambert series `Σ f(n) xⁿ/(1 − xⁿ)`.
pub fn divisor_sum(f: &ArithmeticFunction) -> ArithmeticFunction {
    dirichlet_convolve(&ArithmeticFunction::one(f.horizon()), f)
}

/// `μ ∗ p`, inverting [`divisor_sum`].
pub fn mobius_invert(p: &ArithmeticFunction) -> ArithmeticFunction {
    let mu = mobius_table(p.horizon());
    let mu = ArithmeticFunction::from_ints(mu.into_iter().map(i64::from));
    dirichlet_convolve(&mu, p)
}

/// `μ ∗ p` for integer data, in place of the rational route when `N` is large.
pub(crate) fn mobius_invert_i128(p: &[i128]) -> Vec<i128> {
    let n = p.len();
    let mu = mobius_table(n);
    let mut out = vec![0i128; n];
    for d in 1..=n {
        if mu[d - 1] == 0 {
            continue;
        }
        let s = i128::from(mu[d - 1]);
        for m in 1..=n / d {
            out[d * m - 1] += s * p[m - 1];
        }
    }
    out
}
