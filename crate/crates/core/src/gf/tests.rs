use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qq(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn gf(num: &[i64], den: &[(usize, u32)]) -> ShortGF {
    ShortGF::new(Poly::from_ints(num), den.iter().copied()).unwrap()
}

fn conway() -> ShortGF {
    // (x+1)(x-1)^4 = (1 - x^2)(1 - x)^3
    gf(&[0, 6, 2, -2, 3, -1], &[(1, 3), (2, 1)])
}

/// Closed form 2/3 n^3 + 9/4 n^2 + 7/3 n + (7 + (-1)^n)/8.
fn conway_closed(n: i64) -> BigRational {
    let nn = q(n);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    qq(2, 3) * &nn * &nn * &nn + qq(9, 4) * &nn * &nn + qq(7, 3) * &nn + qq(7 + sign, 8)
}

#[test]
fn sums() {
    let a = gf(&[0, 1], &[(1, 1)]);
    assert_eq!(gf_add(&a, &ShortGF::zero()), a);
    assert_eq!(gf_add(&a, &a), gf(&[0, 2], &[(1, 1)]));
    let b = gf(&[0, 1], &[(2, 1)]);
    let s = gf_add(&a, &b);
    let direct: Vec<BigRational> = a
        .expand(10)
        .into_iter()
        .zip(b.expand(10))
        .map(|(x, y)| x + y)
        .collect();
    assert_eq!(s.expand(10), direct);
    assert_eq!(direct[1..5], [q(2), q(1), q(2), q(1)]);
}

#[test]
fn expansions() {
    let e = gf(&[0, 2, -1], &[(1, 2)]).expand(8);
    assert_eq!(e[0], q(0));
    for (n, v) in e.iter().enumerate().skip(1) {
        assert_eq!(*v, q(n as i64 + 1));
    }
    assert!(gf(&[1], &[(1, 1)]).expand(12).iter().all(One::is_one));
    let c = conway().expand(5);
    assert_eq!(c[1..], [q(6), q(20), q(46), q(89)]);
}

#[test]
fn conway_matches_closed_form() {
    let e = conway().expand(101);
    for n in 1..=100 {
        assert_eq!(e[n as usize], conway_closed(n), "n = {n}");
    }
    let qp = to_quasipolynomial(&conway()).unwrap();
    assert_eq!(qp.period, 2);
    for r in 0..2 {
        assert_eq!(qp.polys[r].coeff(3), qq(2, 3));
        assert_eq!(qp.polys[r].coeff(2), qq(9, 4));
        assert_eq!(qp.polys[r].coeff(1), qq(7, 3));
    }
    assert_eq!(qp.polys[0].coeff(0), q(1));
    assert_eq!(qp.polys[1].coeff(0), qq(3, 4));
}

#[test]
fn normalization_reduces_denominators() {
    let g = gf(&[0, 1, -1], &[(1, 2)]);
    assert_eq!(g.numerator(), &Poly::from_ints(&[0, 1]));
    assert_eq!(g.denominator().get(&1), Some(&1));
    // x(1 + x)/(1 - x^2) = x/(1 - x)
    let g = gf(&[0, 1, 1], &[(2, 1)]);
    assert_eq!(g, gf(&[0, 1], &[(1, 1)]));
    assert_eq!(gf(&[], &[(3, 2)]), ShortGF::zero());
}

#[test]
fn shortness() {
    let one = Poly::one();
    assert!(is_short(&one, &Poly::from_ints(&[1, -2, 1])));
    // (x + 1)(x - 1)^4
    let d = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[-1, 1]).pow(4);
    assert!(is_short(&Poly::from_ints(&[0, 6, 2, -2, 3, -1]), &d));
    assert!(!is_short(&one, &Poly::from_ints(&[1, -2])));
    // cancelled factor does not count
    assert!(is_short(&Poly::from_ints(&[1, -2]), &Poly::from_ints(&[1, -2])));
    // 1 + x + x^2 has primitive cube roots of unity
    assert!(is_short(&one, &Poly::from_ints(&[1, 1, 1])));
    assert!(!is_short(&one, &Poly::from_ints(&[1, 1, 2])));
}

#[test]
fn quasipolynomials() {
    let qp = to_quasipolynomial(&gf(&[0, 2, -1], &[(1, 2)])).unwrap();
    assert_eq!(qp.period, 1);
    assert_eq!(qp.polys[0], Poly::from_ints(&[1, 1]));
    assert_eq!(qp.transient, vec![(0, q(0))]);
    let qp = to_quasipolynomial(&gf(&[0, 1], &[(2, 1)])).unwrap();
    assert_eq!(qp.period, 2);
    assert_eq!(qp.polys[1], Poly::one());
    assert!(qp.polys[0].is_zero());
    let qp = to_quasipolynomial(&gf(&[0, 0, 5], &[])).unwrap();
    assert!(qp.is_zero());
    assert_eq!(qp.transient, vec![(2, q(5))]);
}

#[test]
fn asymptotics() {
    let lin = QuasiPolynomial::new(vec![Poly::from_ints(&[1, 1])]).unwrap();
    assert_eq!(
        smooth_asymptotics(&lin).unwrap(),
        AsymptoticProfile::Power { d: 2, c: qq(1, 2) }
    );
    let osc = QuasiPolynomial::new(vec![Poly::new(vec![q(1), qq(1, 2)]), Poly::zero()]).unwrap();
    assert_eq!(
        smooth_asymptotics(&osc).unwrap(),
        AsymptoticProfile::Power { d: 2, c: qq(1, 8) }
    );
    let zero = QuasiPolynomial::new(vec![Poly::zero()]).unwrap();
    assert_eq!(smooth_asymptotics(&zero).unwrap(), AsymptoticProfile::Zero);
    let neg = QuasiPolynomial::new(vec![Poly::from_ints(&[0, -1])]).unwrap();
    assert!(smooth_asymptotics(&neg).is_err());
}

/// `s̄(n) / n^d` against `c`, relative error below 1%.
fn check_partial_sums(g: &ShortGF, n: usize) {
    let qp = to_quasipolynomial(g).unwrap();
    let AsymptoticProfile::Power { d, c } = smooth_asymptotics(&qp).unwrap() else {
        return;
    };
    let mut sum = BigRational::zero();
    for k in 0..=n {
        sum += qp.eval(k);
    }
    let ratio = sum / q(n as i64).pow(d as i32);
    let rel = ((ratio - &c) / &c).abs();
    assert!(rel < qq(1, 100), "{g}: relative error {rel}");
}

#[test]
fn partial_sums_approach_profile() {
    for g in [
        conway(),
        gf(&[0, 2, -1], &[(1, 2)]),
        gf(&[0, 1], &[(2, 1)]),
        gf(&[1, 0, 3], &[(1, 1), (3, 2)]),
    ] {
        check_partial_sums(&g, 10_000);
    }
}

#[test]
fn text_form_round_trip() {
    let g = conway();
    let s = g.to_text();
    assert_eq!(s, "P = [0,6,2,-2,3,-1]; Q = [(1,3),(2,1)]");
    assert_eq!(s.parse::<ShortGF>().unwrap(), g);
    let h: ShortGF = "P = [1/2, 0, -3]; Q = []".parse().unwrap();
    assert_eq!(h.numerator().coeff(0), qq(1, 2));
    assert!("P = [1]".parse::<ShortGF>().is_err());
    assert!("P = [1]; Q = [(0,1)]".parse::<ShortGF>().is_err());
}

fn arb_gf() -> impl Strategy<Value = ShortGF> {
    (
        prop::collection::vec(-5i64..=5, 0..6),
        prop::collection::vec((1usize..=4, 1u32..=2), 0..4),
    )
        .prop_map(|(num, den)| gf(&num, &den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quasipolynomial_reproduces_expansion(g in arb_gf()) {
        let qp = to_quasipolynomial(&g).unwrap();
        let e = g.expand(200);
        for (n, v) in e.iter().enumerate() {
            prop_assert_eq!(&qp.eval(n), v);
        }
    }

    #[test]
    fn addition_commutes_and_associates(a in arb_gf(), b in arb_gf(), c in arb_gf()) {
        let ab = gf_add(&a, &b);
        prop_assert_eq!(ab.expand(100), gf_add(&b, &a).expand(100));
        prop_assert_eq!(
            gf_add(&ab, &c).expand(100),
            gf_add(&a, &gf_add(&b, &c)).expand(100)
        );
    }

    #[test]
    fn integer_expansions_keep_integer_numerators(g in arb_gf()) {
        if g.expand(60).iter().all(|c| c.is_integer()) {
            prop_assert!(g.numerator().is_integral());
        }
    }

    #[test]
    fn stored_denominators_are_short(g in arb_gf()) {
        prop_assert!(is_short(g.numerator(), &g.denominator_poly()));
    }
}
