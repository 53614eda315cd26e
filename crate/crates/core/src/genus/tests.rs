use std::path::PathBuf;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::counting::{assemble_bm, load_lw, CountError, CountOptions, FitOptions, LwComplex};
use crate::gf::{Poly, QuasiPolynomial};

fn fixture(name: &str) -> LwComplex {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    load_lw(&p).unwrap()
}

fn r(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `#{1 ≤ k ≤ n : gcd(k, n) = 1}` by direct count.
fn coprime_count(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

#[test]
fn mobius_small_values() {
    let mu: Vec<i64> = (1..=6).map(mobius).collect();
    assert_eq!(mu, vec![1, -1, -1, 0, -1, 1]);
}

#[test]
fn mobius_table_agrees_with_factorization() {
    let table = mobius_table(500);
    for n in 1..=500u64 {
        assert_eq!(i64::from(table[n as usize - 1]), mobius(n), "n = {n}");
    }
}

#[test]
fn totient_agrees_with_coprime_count() {
    for n in 1..=300 {
        assert_eq!(totient(n), coprime_count(n), "n = {n}");
    }
}

#[test]
fn divisor_sum_of_totient_is_identity() {
    let phi = ArithmeticFunction::from_ints((1..=100).map(|n| totient(n) as i64));
    let s = divisor_sum(&phi);
    assert_eq!(s, ArithmeticFunction::from_ints(1..=100));
}

#[test]
fn mobius_invert_of_n_plus_one() {
    let p = ArithmeticFunction::from_ints((1..=30).map(|n| n + 1));
    let a = mobius_invert(&p);
    // μ(6)·2 + μ(3)·3 + μ(2)·4 + μ(1)·7
    assert_eq!(a.get(6), Some(&r(2 - 3 - 4 + 7)));
    assert_eq!(a.get(1), Some(&r(2)));
    for n in 2..=30u64 {
        assert_eq!(a.get(n as usize), Some(&r(coprime_count(n) as i64)), "n = {n}");
    }
}

#[test]
fn mobius_invert_of_one_is_unit_indicator() {
    let a = mobius_invert(&ArithmeticFunction::one(40));
    let expected = ArithmeticFunction::from_ints((1..=40).map(|n| i64::from(n == 1)));
    assert_eq!(a, expected);
}

#[test]
fn smoothing_prefix_sums() {
    assert_eq!(smooth(&[1, 1, 1]), vec![1, 2, 3]);
    assert_eq!(smooth(&[2, 1, 2, 2, 4]), vec![2, 3, 5, 7, 11]);
    assert!(smooth(&[]).is_empty());
}

#[test]
fn zeta_even_values() {
    let pi = std::f64::consts::PI;
    assert!((zeta(2) - pi * pi / 6.0).abs() < 1e-13);
    assert!((zeta(4) - pi.powi(4) / 90.0).abs() < 1e-13);
    assert!((zeta(6) - pi.powi(6) / 945.0).abs() < 1e-13);
}

#[test]
fn zeta_three_against_slow_sum() {
    // Σ_{k ≤ N} k^-3 + 1/(2N²) − 1/(2N³) + 1/(4N⁴), error O(N^-6)
    let n = 2000u32;
    let mut s: f64 = (1..=n).map(|k| f64::from(k).powi(-3)).sum();
    let nf = f64::from(n);
    s += 1.0 / (2.0 * nf * nf) - 1.0 / (2.0 * nf.powi(3)) + 1.0 / (4.0 * nf.powi(4));
    assert!((zeta(3) - s).abs() < 1e-12);
}

fn n_plus_one() -> QuasiPolynomial {
    QuasiPolynomial::new(vec![Poly::from_ints(&[1, 1])]).unwrap()
}

#[test]
fn areg_limit_for_n_plus_one() {
    let pi = std::f64::consts::PI;
    let l = areg_limit(&n_plus_one()).unwrap();
    assert!((l - 3.0 / (pi * pi)).abs() < 1e-12);
    let c = areg_check(&n_plus_one(), 100_000).unwrap();
    assert!(c.relative_difference < 0.02, "{c:?}");
}

#[test]
fn areg_limit_for_n_squared() {
    let p = QuasiPolynomial::new(vec![Poly::from_ints(&[0, 0, 1])]).unwrap();
    assert!((areg_limit(&p).unwrap() - 1.0 / 3.0 / zeta(3)).abs() < 1e-15);
}

#[test]
fn areg_rejects_degree_zero_and_mixed_leads() {
    let constant = QuasiPolynomial::new(vec![Poly::from_ints(&[3])]).unwrap();
    assert!(matches!(areg_limit(&constant), Err(CountError::Unsupported(_))));
    let mixed = QuasiPolynomial::new(vec![Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 2])]).unwrap();
    assert!(matches!(areg_limit(&mixed), Err(CountError::Unsupported(_))));
}

fn phi_pattern(n: usize) -> Vec<u64> {
    (1..=n as u64)
        .map(|k| if k == 1 { 2 } else { coprime_count(k) })
        .collect()
}

#[test]
fn phi_pattern_is_regular_with_n_plus_one() {
    let a = ArithmeticFunction::from_ints(phi_pattern(40).into_iter().map(|v| v as i64));
    let Regularity::Regular { p, divisor_sums, .. } = regularity_test(&a, &FitOptions::default()).unwrap()
    else {
        panic!("expected a fit");
    };
    for n in 1..=40 {
        assert_eq!(p.eval(n), r(n as i64 + 1));
        assert_eq!(divisor_sums.values[n - 1], r(n as i64 + 1));
    }
}

#[test]
fn zero_sequence_is_regular() {
    let a = ArithmeticFunction::from_ints(vec![0; 40]);
    let Regularity::Regular { p, .. } = regularity_test(&a, &FitOptions::default()).unwrap() else {
        panic!("expected a fit");
    };
    assert!(p.is_zero());
}

#[test]
fn short_irregular_data_is_reported_within_budget() {
    let a = ArithmeticFunction::from_ints([6, 4, 10, 14, 26, 26, 52]);
    let out = regularity_test(&a, &FitOptions::default()).unwrap();
    assert!(matches!(out, Regularity::NoFitWithinBudget { terms: 7, .. }));
}

#[test]
fn slope_of_exact_powers() {
    for s in 1..=6i32 {
        let abar: Vec<u64> = (1..=60u64).map(|n| 3 * n.pow(s as u32)).collect();
        let e = slope_estimate(&abar, 5).unwrap();
        assert_eq!(e.s, s);
        assert!((e.constant - 3.0).abs() < 1e-9);
    }
    let cubic: Vec<u64> = (1..=200u64).map(|n| 5 * n.pow(3) + 2 * n).collect();
    assert_eq!(slope_estimate(&cubic, 20).unwrap().s, 3);
}

#[test]
fn slope_of_phi_pattern_is_two() {
    let abar = smooth(&phi_pattern(200));
    let e = slope_estimate(&abar, 20).unwrap();
    assert_eq!(e.s, 2);
    let pi = std::f64::consts::PI;
    let last = e.ratios.last().unwrap().1;
    assert!((last - 3.0 / (pi * pi)).abs() < 0.02);
}

#[test]
fn slope_needs_nonzero_tail() {
    assert!(slope_estimate(&[0, 0, 0, 0], 0).is_err());
}

#[test]
fn analysis_report_on_phi_pattern() {
    let a = analyze_genus(&phi_pattern(60), &AnalyzeOptions::default()).unwrap();
    let text = a.to_text();
    assert!(text.contains("regular: yes"));
    assert!(text.contains("p(n): n + 1"));
    assert!(text.contains("s: 2"));
}

#[test]
fn loglog_and_svg_output() {
    let csv = loglog_csv(&[0, 1, 4]);
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("log_n,log_abar\n0.693147,0.000000"));
    let svg = svg_scatter(&[(0.0, 0.0), (1.0, 2.0)], "log n", "log abar");
    assert_eq!(svg.matches("<circle").count(), 2);
}

#[test]
fn gcd_edge_genus_counts_follow_totient() {
    let lw = fixture("gcd_edge.lw");
    let a = genus_counts(&lw, 31, &CountOptions::default()).unwrap();
    assert_eq!(a.values, phi_pattern(30));
    let b = assemble_bm(&lw, 30, &CountOptions::default()).unwrap().series;
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!(x <= y);
    }
}

#[test]
fn single_ray_face_counts_once() {
    let lw = fixture("gcd_edge.lw");
    let f = &lw.faces[lw.face("F").unwrap()];
    let a = face_genus_counts(&lw, f, 8, &CountOptions::default()).unwrap();
    assert_eq!(a.values, vec![1, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn disjoint_edge_only_counts_its_rays() {
    let lw = fixture("disjoint_edge.lw");
    let a = genus_counts(&lw, 11, &CountOptions::default()).unwrap();
    assert_eq!(a.values, vec![2, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn nonzero_isotopy_subspace_is_unsupported() {
    let lw = fixture("k13n585.lw");
    assert!(matches!(
        genus_counts(&lw, 4, &CountOptions::default()),
        Err(CountError::Unsupported(_))
    ));
}

#[test]
fn genus_series_csv_round_trip() {
    let a = GenusSeries::new(vec![2, 1, 2, 2, 4]);
    assert_eq!(GenusSeries::from_csv(&a.to_csv()).unwrap(), a);
    assert_eq!(a.genus(2), Some(2));
}

proptest! {
    #[test]
    fn mobius_inversion_round_trip(v in prop::collection::vec(-50i64..50, 1..80)) {
        let f = ArithmeticFunction::from_ints(v);
        prop_assert_eq!(mobius_invert(&divisor_sum(&f)), f.clone());
        prop_assert_eq!(divisor_sum(&mobius_invert(&f)), f);
    }

    #[test]
    fn convolution_commutes(a in prop::collection::vec(-9i64..9, 1..40), b in prop::collection::vec(-9i64..9, 1..40)) {
        let f = ArithmeticFunction::from_ints(a);
        let g = ArithmeticFunction::from_ints(b);
        prop_assert_eq!(dirichlet_convolve(&f, &g), dirichlet_convolve(&g, &f));
    }
}
