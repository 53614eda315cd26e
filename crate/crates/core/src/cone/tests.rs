use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::exact::{primitive, rational_nullspace};
use crate::normal::{closed_quad_system, matching_equations, vertex_link_vectors};
use crate::triangulation::{decode_isosig, parse_gluing_file};

const FIGURE_EIGHT: &str = "\
tets 2 kind=ideal
1:1302 1:2031 1:0321 1:2103
0:1302 0:2031 0:0321 0:2103
";

/// Extreme rays by trying every support set.
fn brute_force_rays(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << dim) {
        let cols: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 1).collect();
        let restricted: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|&c| BigRational::from_integer(r[c].into()))
                    .collect()
            })
            .collect();
        let ns = rational_nullspace(&restricted, cols.len());
        if ns.len() != 1 {
            continue;
        }
        let v = &ns[0];
        let sign = if v.iter().any(Signed::is_positive) { 1 } else { -1 };
        if !v.iter().all(|x| {
            if sign > 0 {
                x.is_positive()
            } else {
                x.is_negative()
            }
        }) {
            continue;
        }
        let lcm = v
            .iter()
            .fold(BigInt::from(1), |a, x| num_integer::lcm(a, x.denom().clone()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone() * sign)).to_integer())
            .collect();
        let p = primitive(&ints);
        let mut full = vec![0i64; dim];
        for (k, &c) in cols.iter().enumerate() {
            full[c] = i64::try_from(&p[k]).unwrap();
        }
        out.push(full);
    }
    out.sort();
    out
}

fn no_groups() -> DdOptions {
    DdOptions {
        require_admissible: false,
        prune_admissible: false,
        ..DdOptions::default()
    }
}

#[test]
fn orthant_without_equations() {
    let rays = extreme_rays(&[], 7, &[], &no_groups()).unwrap();
    assert_eq!(rays.len(), 7);
    let t = parse_gluing_file("tets 1 kind=finite\n- - - -\n").unwrap();
    let sys = matching_equations(&t, CoordSystem::Standard).unwrap();
    let cone = SolutionCone::new(sys, &DdOptions::default()).unwrap();
    assert_eq!(cone.rays().len(), 7);
    let faces = cone.maximal_admissible_faces();
    assert_eq!(faces.len(), 3);
    assert!(faces.iter().all(|f| f.support.len() == 5 && f.rays.len() == 5));
}

#[test]
fn diagonal_ray() {
    let rays = extreme_rays(&[vec![1, -1]], 2, &[], &no_groups()).unwrap();
    assert_eq!(rays, vec![vec![1, 1]]);
}

#[test]
fn figure_eight_matches_brute_force() {
    let t = parse_gluing_file(FIGURE_EIGHT).unwrap();
    let sys = matching_equations(&t, CoordSystem::Standard).unwrap();
    let rows = sys.rows_i64();
    let all = extreme_rays(&rows, 14, &[], &no_groups()).unwrap();
    assert_eq!(all, brute_force_rays(&rows, 14));
    let cone = SolutionCone::new(sys, &DdOptions::default()).unwrap();
    let groups = quad_groups(CoordSystem::Standard, 2);
    let admissible: Vec<Vec<i64>> = all
        .into_iter()
        .filter(|r| dd::admissible_support(|i| r[i] != 0, &groups))
        .collect();
    let got: Vec<Vec<i64>> = cone.rays().iter().map(|r| r.entries().to_vec()).collect();
    assert_eq!(got, admissible);
    let link = &vertex_link_vectors(&t)[0];
    assert!(cone.rays().contains(link));
    for r in cone.rays() {
        assert!(is_extreme(&rows, r.entries()));
    }
}

#[test]
fn pruning_does_not_change_admissible_rays() {
    let t = decode_isosig("nvLAAvAPQkcdfgfhkmjlmklmwcadtfaaoaedrg").unwrap();
    let sys = closed_quad_system(&t).unwrap();
    let groups = quad_groups(CoordSystem::Quad, t.size());
    let rows = sys.rows_i64();
    let pruned = extreme_rays(&rows, 39, &groups, &DdOptions::default()).unwrap();
    let unpruned = extreme_rays(
        &rows,
        39,
        &groups,
        &DdOptions {
            prune_admissible: false,
            ..DdOptions::default()
        },
    )
    .unwrap();
    assert_eq!(pruned, unpruned);
}

#[test]
fn carriers() {
    let t = parse_gluing_file(FIGURE_EIGHT).unwrap();
    let sys = matching_equations(&t, CoordSystem::Standard).unwrap();
    let cone = SolutionCone::new(sys, &DdOptions::default()).unwrap();
    for (i, r) in cone.rays().iter().enumerate() {
        assert_eq!(cone.carrier(r).unwrap().rays, vec![i]);
    }
    for face in cone.maximal_admissible_faces() {
        let mut sum = NormalVector::zero(CoordSystem::Standard, 2);
        for &r in &face.rays {
            sum = crate::normal::haken_sum(&sum, &cone.rays()[r]).unwrap();
        }
        let c = cone.carrier(&sum).unwrap();
        assert_eq!(c.rays, face.rays);
        assert_eq!(c.support, face.support);
        assert!(carries_vertex_link(&face, &vertex_link_vectors(&t)));
    }
    let bad = NormalVector::new(CoordSystem::Standard, [vec![1], vec![0; 13]].concat()).unwrap();
    assert_eq!(cone.carrier(&bad), Err(ConeError::NotASolution));
}

fn plane_system(dim: usize) -> MatchingSystem {
    MatchingSystem {
        system: CoordSystem::Quad,
        matrix: crate::exact::IntegerMatrix::zeros(0, dim),
    }
}

fn unit_rays(dim: usize) -> Vec<NormalVector> {
    (0..dim)
        .map(|i| {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            NormalVector::new(CoordSystem::Quad, e).unwrap()
        })
        .collect()
}

#[test]
fn zero_subspace_leaves_only_the_interior() {
    let sys = plane_system(3);
    let rays = unit_rays(3);
    let d = classify_dependent_faces(&sys, &rays, &[0, 1, 2], &[], None).unwrap();
    assert_eq!(d.faces.len(), 7);
    assert_eq!(d.faces.iter().filter(|f| f.dependent).count(), 1);
    assert_eq!(d.maximal_independent.len(), 3);
    let mut sets = d.active_sets.clone();
    sets.sort();
    assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);
}

#[test]
fn edge_with_parallel_subspace_is_entirely_dependent() {
    let sys = plane_system(3);
    let rays = unit_rays(3);
    let w = vec![vec![BigInt::from(1), BigInt::from(-1), BigInt::zero()]];
    let weight: Vec<BigRational> = vec![BigRational::from_integer(1.into()); 3];
    let d = classify_dependent_faces(&sys, &rays, &[0, 1], &w, Some(&weight)).unwrap();
    assert!(d.faces.iter().all(|f| f.dependent));
    assert!(d.maximal_independent.is_empty());
    // triangle with the same subspace: the edge opposite vertex 2 and vertex 2
    // itself cannot reach the interior
    let d = classify_dependent_faces(&sys, &rays, &[0, 1, 2], &w, Some(&weight)).unwrap();
    let mut indep: Vec<Vec<usize>> = d.maximal_independent.iter().map(|f| f.rays.clone()).collect();
    indep.sort();
    assert_eq!(indep, vec![vec![0, 1], vec![2]]);
    let dep: Vec<Vec<usize>> = d
        .faces
        .iter()
        .filter(|f| f.dependent)
        .map(|f| f.rays.clone())
        .collect();
    assert_eq!(dep, vec![vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
}

#[test]
fn subspace_validation() {
    let sys = plane_system(3);
    let rays = unit_rays(3);
    let outside = vec![vec![BigInt::from(1), BigInt::zero(), BigInt::from(-1)]];
    assert!(classify_dependent_faces(&sys, &rays, &[0, 1], &outside, None).is_err());
    let heavy = vec![vec![BigInt::from(1), BigInt::from(1), BigInt::zero()]];
    let weight: Vec<BigRational> = vec![BigRational::from_integer(1.into()); 3];
    assert!(classify_dependent_faces(&sys, &rays, &[0, 1], &heavy, Some(&weight)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn dd_matches_brute_force(dim in 3usize..=8, seed_rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 8), 1..4)) {
        let rows: Vec<Vec<i64>> = seed_rows.iter().map(|r| r[..dim].to_vec()).collect();
        let dd = extreme_rays(&rows, dim, &[], &no_groups()).unwrap();
        prop_assert_eq!(dd, brute_force_rays(&rows, dim));
    }

    #[test]
    fn pruning_is_invisible(dim in 4usize..=9, seed_rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 9), 1..4)) {
        let rows: Vec<Vec<i64>> = seed_rows.iter().map(|r| r[..dim].to_vec()).collect();
        let groups = vec![vec![0, 1, 2], vec![dim - 3, dim - 2, dim - 1]];
        let a = extreme_rays(&rows, dim, &groups, &DdOptions::default()).unwrap();
        let b = extreme_rays(&rows, dim, &groups, &DdOptions { prune_admissible: false, ..DdOptions::default() }).unwrap();
        prop_assert_eq!(a, b);
    }
}
