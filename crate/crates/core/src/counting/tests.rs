use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::exact::{lattice_complement, saturate};
use crate::gf::{Poly, ShortGF};
use crate::normal::{CoordSystem, NormalVector};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A one-tetrahedron standard vector with the given leading entries.
fn nv(v: &[i64]) -> NormalVector {
    let mut e = v.to_vec();
    e.resize(7, 0);
    NormalVector::new(CoordSystem::Standard, e).unwrap()
}

fn pad(v: &[i64]) -> Vec<BigInt> {
    let mut e = big(v);
    e.resize(7, BigInt::zero());
    e
}

/// All `x ∈ Z^k_{≥0}` with `Σ x = n`.
fn compositions(k: usize, n: i64) -> Vec<Vec<i64>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(k - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Brute-force lattice points of `{x ≥ 0 : A x = 0, w·x = n}`.
fn brute_slice(rows: &[Vec<i64>], weights: &[i64], n: i64) -> Vec<Vec<i64>> {
    let k = weights.len();
    let mut out = Vec::new();
    let bound: Vec<i64> = weights.iter().map(|&w| n / w).collect();
    let mut x = vec![0i64; k];
    loop {
        let s: i64 = x.iter().zip(weights).map(|(a, b)| a * b).sum();
        if s == n
            && rows
                .iter()
                .all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return out;
            }
            x[i] += 1;
            if x[i] <= bound[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn slice_matches_brute_force(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..3),
        weights in prop::collection::vec(1i64..=3, 5),
        n in 0i64..=8,
    ) {
        let support: Vec<usize> = (0..5).collect();
        let functional: Vec<BigRational> = weights.iter().map(|&w| q(w)).collect();
        let slice = Slice { rows: &rows, dim: 5, support: &support, functional: &functional };
        let got = slice.points(&q(n), 1_000_000).unwrap();
        prop_assert_eq!(got, brute_slice(&rows, &weights, n));
    }
}

#[test]
fn slice_respects_support_and_cap() {
    let rows = vec![vec![1, -1, 0, 0]];
    let functional = vec![q(1); 4];
    let support = vec![0, 1, 3];
    let slice = Slice {
        rows: &rows,
        dim: 4,
        support: &support,
        functional: &functional,
    };
    let pts = slice.points(&q(4), 100).unwrap();
    assert_eq!(pts, vec![vec![0, 0, 0, 4], vec![1, 1, 0, 2], vec![2, 2, 0, 0]]);
    assert!(matches!(
        slice.points(&q(40), 5),
        Err(CountError::CapExceeded { .. })
    ));
    let zero = vec![q(0), q(0), q(0), q(1)];
    let unbounded = Slice {
        functional: &zero,
        ..slice
    };
    assert!(matches!(
        unbounded.points(&q(1), 100),
        Err(CountError::Unbounded(_))
    ));
}

/// Lattice points of the cone over `rays` by brute force: every `x ≥ 0` with
/// coordinate sum `n`, tested for membership in the relevant cone and not in
/// any removed face. Works for simplicial cones with nonnegative rays whose
/// degree is the coordinate sum.
fn brute_cone_counts(rays: &[Vec<i64>], removed: &[Vec<usize>], horizon: i64) -> Vec<BigRational> {
    let k = rays[0].len();
    let m = rays.len();
    let rows: Vec<Vec<BigRational>> = rays.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut counts = vec![BigRational::zero(); horizon as usize + 1];
    for n in 0..=horizon {
        for x in compositions(k, n) {
            // solve Σ λ_i r_i = x
            let a: Vec<Vec<BigRational>> = (0..k)
                .map(|j| (0..m).map(|i| rows[i][j].clone()).collect())
                .collect();
            let b: Vec<BigRational> = x.iter().map(|&v| q(v)).collect();
            let Some(lam) = crate::exact::solve_rational(&a, &b, m) else {
                continue;
            };
            if lam.iter().any(|l| *l < BigRational::zero()) {
                continue;
            }
            let supp: Vec<usize> = (0..m).filter(|&i| !lam[i].is_zero()).collect();
            if removed.iter().any(|r| supp.iter().all(|i| r.contains(i))) {
                continue;
            }
            counts[n as usize] += q(1);
        }
    }
    counts
}

fn sum_degree(k: usize) -> Vec<BigRational> {
    vec![q(1); k]
}

#[test]
fn ehrhart_small_cases() {
    let one = ehrhart_series_exact(&[big(&[1])], &sum_degree(1), &[vec![]]).unwrap();
    assert_eq!(one, ShortGF::new(Poly::from_ints(&[0, 1]), [(1, 1)]).unwrap());
    let rays = [big(&[1, 0]), big(&[0, 1])];
    let closed = ehrhart_series_exact(&rays, &sum_degree(2), &[]).unwrap();
    assert_eq!(closed.expand(4), vec![q(1), q(2), q(3), q(4)]);
    let open = ehrhart_series_exact(&rays, &sum_degree(2), &[vec![0], vec![1]]).unwrap();
    let e = open.expand(21);
    for (n, v) in e.iter().enumerate().skip(1) {
        assert_eq!(*v, q(n as i64 - 1));
    }
    assert_eq!(open, ShortGF::new(Poly::from_ints(&[0, 0, 1]), [(1, 2)]).unwrap());
}

#[test]
fn ehrhart_lower_dimensional_cone() {
    // a 2-dimensional cone in Z^3 whose lattice is not generated by its rays
    let rays = vec![vec![2, 0, 0], vec![0, 1, 1]];
    let g = ehrhart_series_exact(
        &rays.iter().map(|r| big(r)).collect::<Vec<_>>(),
        &sum_degree(3),
        &[],
    )
    .unwrap();
    let brute = brute_cone_counts(&rays, &[], 20);
    assert_eq!(g.expand(21), brute);
}

#[test]
fn ehrhart_non_simplicial_cone() {
    // cone over a square: |x| + |y| ≤ z, degree z
    let rays: Vec<Vec<BigInt>> = [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]
        .iter()
        .map(|r| big(r))
        .collect();
    let degree = vec![q(0), q(0), q(1)];
    let closed = ehrhart_series_exact(&rays, &degree, &[]).unwrap();
    let interior =
        ehrhart_series_exact(&rays, &degree, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let (ce, ie) = (closed.expand(21), interior.expand(21));
    for z in 0..=20i64 {
        let mut c = 0i64;
        let mut i = 0i64;
        for x in -z..=z {
            for y in -z..=z {
                let s = x.abs() + y.abs();
                if s <= z {
                    c += 1;
                }
                if s < z {
                    i += 1;
                }
            }
        }
        assert_eq!(ce[z as usize], q(c), "closed z = {z}");
        assert_eq!(ie[z as usize], q(i), "interior z = {z}");
    }
    assert!(ehrhart_series_exact(&rays, &degree, &[vec![0, 2]]).is_err());
}

fn arb_simplicial() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<usize>>)> {
    (1usize..=4)
        .prop_flat_map(|m| {
            (
                prop::collection::vec(prop::collection::vec(0i64..=2, m), m),
                prop::collection::vec(prop::collection::vec(any::<bool>(), m), 0..3),
            )
        })
        .prop_filter_map("rays must be independent with degree ≤ 4", |(rays, masks)| {
            let m = rays.len();
            if rays.iter().any(|r| {
                let d: i64 = r.iter().sum();
                d == 0 || d > 4
            }) {
                return None;
            }
            let rr: Vec<Vec<BigRational>> = rays.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            if crate::exact::rational_rank(&rr, m) != m {
                return None;
            }
            let removed = masks
                .into_iter()
                .map(|mask| (0..m).filter(|&i| mask[i]).collect())
                .collect();
            Some((rays, removed))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ehrhart_matches_brute_force((rays, removed) in arb_simplicial()) {
        let m = rays[0].len();
        let g = ehrhart_series_exact(
            &rays.iter().map(|r| big(r)).collect::<Vec<_>>(),
            &sum_degree(m),
            &removed,
        ).unwrap();
        prop_assert_eq!(g.expand(21), brute_cone_counts(&rays, &removed, 20));
    }
}

#[test]
fn fits() {
    let edge: Vec<BigRational> = std::iter::once(q(0)).chain((1..=40).map(|n| q(n + 1))).collect();
    let g = fit_short_gf(&edge, &FitOptions::default()).unwrap();
    assert_eq!(g, ShortGF::new(Poly::from_ints(&[0, 2, -1]), [(1, 2)]).unwrap());
    let ones: Vec<BigRational> = std::iter::once(q(0)).chain((1..=30).map(|_| q(1))).collect();
    let g = fit_short_gf(&ones, &FitOptions::default()).unwrap();
    assert_eq!(g, ShortGF::new(Poly::from_ints(&[0, 1]), [(1, 1)]).unwrap());
    let few = vec![q(0), q(6), q(4), q(10), q(14), q(26), q(26), q(52)];
    assert!(matches!(
        fit_short_gf(&few, &FitOptions::default()),
        Err(CountError::NoFit(_))
    ));
    // 2^n is not short
    let pow: Vec<BigRational> = (0..40).map(|n| q(1i64 << n)).collect();
    assert!(matches!(
        fit_short_gf(&pow, &FitOptions::default()),
        Err(CountError::NoFit(_))
    ));
}

#[test]
fn conway_values_fit() {
    let closed = |n: i64| {
        let nn = q(n);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        BigRational::new(2.into(), 3.into()) * &nn * &nn * &nn
            + BigRational::new(9.into(), 4.into()) * &nn * &nn
            + BigRational::new(7.into(), 3.into()) * &nn
            + BigRational::new((7 + sign).into(), 8.into())
    };
    let coeffs: Vec<BigRational> = std::iter::once(q(0)).chain((1..=40).map(closed)).collect();
    let g = fit_short_gf(&coeffs, &FitOptions::default()).unwrap();
    assert_eq!(g.numerator(), &Poly::from_ints(&[0, 6, 2, -2, 3, -1]));
    assert_eq!(
        g.denominator().iter().map(|(&b, &m)| (b, m)).collect::<Vec<_>>(),
        vec![(1, 3), (2, 1)]
    );
}

#[test]
fn dep_filter_and_quotients() {
    let pts = vec![nv(&[0, 0, 0]), nv(&[1, 0, 2]), nv(&[1, 1, 0]), nv(&[2, 1, 1])];
    // W = 0 on a 3-coordinate face whose facets are the coordinate planes
    let active = vec![vec![0], vec![1], vec![2]];
    assert_eq!(dep_filter(&pts, &active), vec![nv(&[2, 1, 1])]);
    assert_eq!(dep_filter(&pts, &[]), pts[1..].to_vec());

    let ambient = saturate(&[pad(&[1, 0, 0]), pad(&[0, 1, 0]), pad(&[0, 0, 1])], 7);
    let none = lattice_complement(&ambient, &[]).unwrap();
    assert_eq!(quotient_count(&pts[1..], &none).unwrap().count, 3);
    let w = lattice_complement(&ambient, &[pad(&[0, 1, -2])]).unwrap();
    let qc = quotient_count(&[nv(&[1, 0, 2]), nv(&[1, 1, 0]), nv(&[2, 1, 1])], &w).unwrap();
    assert_eq!(qc.count, 2);
    assert_eq!(qc.representatives[0], nv(&[1, 0, 2]));
    assert_eq!(qc.classes[0], vec![0, 1]);
}

#[test]
fn count_series_csv_round_trip() {
    let s = CountSeries::new(vec![2, 3, 4]);
    let csv = s.to_csv("b");
    assert_eq!(csv, "n,b\n1,2\n2,3\n3,4\n");
    assert_eq!(CountSeries::from_csv(&csv).unwrap(), s);
    assert!(CountSeries::from_csv("n,b\n2,3\n").is_err());
    assert_eq!(s.get(2), Some(3));
    assert_eq!(s.get(0), None);
}
