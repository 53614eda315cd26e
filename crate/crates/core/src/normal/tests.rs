use super::*;
use crate::triangulation::{decode_isosig, parse_gluing_file};

const FIGURE_EIGHT: &str = "\
tets 2 kind=ideal
1:1302 1:2031 1:0321 1:2103
0:1302 0:2031 0:0321 0:2103
";

fn fig8() -> Triangulation {
    parse_gluing_file(FIGURE_EIGHT).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn figure_eight_standard_system() {
    let t = fig8();
    let m = matching_equations(&t, CoordSystem::Standard).unwrap();
    assert_eq!((m.matrix.rows(), m.dim()), (12, 14));
    let link = &vertex_link_vectors(&t)[0];
    assert!(m.is_solution(link));
    assert_eq!(weight(&t, link).unwrap(), q(4, 1));
    assert_eq!(euler_char_standard(&t, link).unwrap(), q(0, 1));
    assert!(is_vertex_link(&t, link).unwrap());
    assert!(!has_obvious_compression(&t, link).unwrap());
}

#[test]
fn unglued_tetrahedron_has_no_equations() {
    let t = parse_gluing_file("tets 1 kind=finite\n- - - -\n").unwrap();
    let m = matching_equations(&t, CoordSystem::Standard).unwrap();
    assert_eq!(m.matrix.rows(), 0);
    assert!(matching_equations(&t, CoordSystem::Quad).is_err());
}

#[test]
fn quad_rows_are_edge_classes() {
    let t = decode_isosig("nvLAAvAPQkcdfgfhkmjlmklmwcadtfaaoaedrg").unwrap();
    let m = matching_equations(&t, CoordSystem::Quad).unwrap();
    assert_eq!(m.matrix.rows(), t.edges().len());
    assert_eq!(m.dim(), 39);
}

#[test]
fn admissibility() {
    let mut e = vec![1i64; 4];
    e.extend([0, 0, 0]);
    assert!(is_admissible(
        &NormalVector::new(CoordSystem::Standard, e).unwrap()
    ));
    let v = NormalVector::new(CoordSystem::Standard, vec![0, 0, 0, 0, 1, 1, 0]).unwrap();
    assert!(!is_admissible(&v));
}

#[test]
fn haken_sum_names_tetrahedron() {
    let mut a = vec![0i64; 28];
    let mut b = vec![0i64; 28];
    a[7 * 3 + 4] = 1;
    b[7 * 3 + 6] = 1;
    let a = NormalVector::new(CoordSystem::Standard, a).unwrap();
    let b = NormalVector::new(CoordSystem::Standard, b).unwrap();
    assert_eq!(haken_sum(&a, &b), Err(NormalError::Incompatible { tet: 3 }));
    let z = NormalVector::zero(CoordSystem::Standard, 4);
    assert_eq!(haken_sum(&a, &z).unwrap(), a);
}

#[test]
fn text_round_trip() {
    let v: NormalVector = "std7t[1,0,2,0,0,0,3]".parse().unwrap();
    assert_eq!(v.to_string(), "std7t[1,0,2,0,0,0,3]");
    let w: NormalVector = "quad3t[ 0, 1 ,2]".parse().unwrap();
    assert_eq!(w.system(), CoordSystem::Quad);
    assert!("std7t[1,2]".parse::<NormalVector>().is_err());
    assert!("foo[1]".parse::<NormalVector>().is_err());
    assert!("std7t[1,0,0,0,0,0,-1]".parse::<NormalVector>().is_err());
}

#[test]
fn links_in_the_complex() {
    let t = fig8();
    let link = vertex_link_vectors(&t).remove(0);
    let cx = SurfaceComplex::build(&t, &link, DEFAULT_DISK_CAP).unwrap();
    assert!(cx.is_connected());
    let c = &cx.components()[0];
    assert!(c.orientable);
    assert_eq!(c.euler_char, 0);
    assert_eq!(c.edge_points, 4);
    assert_eq!(genus(&t, &link).unwrap(), 1);
    let two = haken_sum(&link, &link).unwrap();
    let comps = connected_components(&t, &two, DEFAULT_DISK_CAP).unwrap();
    assert_eq!(comps, vec![link.clone(), link.clone()]);
    assert_eq!(genus(&t, &two), Err(NormalError::NotConnected));
    let (rest, mult) = strip_vertex_links(&t, &two).unwrap();
    assert!(rest.is_zero());
    assert_eq!(mult, vec![2]);
    assert!(!is_vertex_link(&t, &two).unwrap());
}

#[test]
fn disk_cap() {
    let t = fig8();
    let link = vertex_link_vectors(&t).remove(0);
    assert_eq!(
        SurfaceComplex::build(&t, &link, 3).unwrap_err(),
        NormalError::CapExceeded { required: 8, cap: 3 }
    );
}

#[test]
fn quad_euler_char_with_equal_angles() {
    let t = fig8();
    let third = q(1, 3);
    let angles = AngleStructure {
        angles: vec![[third.clone(), third.clone(), third.clone()]; 2],
    };
    let mut e = vec![0i64; 6];
    e[2] = 1;
    let v = NormalVector::new(CoordSystem::Quad, e).unwrap();
    assert_eq!(euler_char_quad(&t, &v, &angles).unwrap(), q(-1, 3));
    let z = NormalVector::zero(CoordSystem::Quad, 2);
    assert_eq!(euler_char_quad(&t, &z, &angles).unwrap(), q(0, 1));
}

#[test]
fn lift_of_link_projection_is_zero() {
    let t = fig8();
    let link = vertex_link_vectors(&t).remove(0);
    let lifted = lift_quad(&t, &project_to_quad(&link)).unwrap().unwrap();
    assert!(lifted.is_zero());
}

#[test]
fn closed_quad_system_contains_quad_matching() {
    for sig in ["cPcbbbiht", "nvLAAvAPQkcdfgfhkmjlmklmwcadtfaaoaedrg"] {
        let t = decode_isosig(sig).unwrap();
        let closed = closed_quad_system(&t).unwrap();
        let quad = matching_equations(&t, CoordSystem::Quad).unwrap();
        let rows = closed.matrix.to_rational_rows();
        let r0 = crate::exact::rational_rank(&rows, 3 * t.size());
        let mut both = rows.clone();
        both.extend(quad.matrix.to_rational_rows());
        assert_eq!(crate::exact::rational_rank(&both, 3 * t.size()), r0, "{sig}");
    }
}

#[test]
fn obvious_compression_around_an_edge() {
    let t = fig8();
    let mut e = vec![0i64; 14];
    let edge = &t.edges()[0];
    for emb in &edge.embeddings {
        let k = quad_type_for_pair(emb.perm.apply(0), emb.perm.apply(1));
        e[7 * emb.tet + 4 + k] = 1;
    }
    let v = NormalVector::new(CoordSystem::Standard, e).unwrap();
    assert!(has_obvious_compression(&t, &v).unwrap());
    let tri_only = NormalVector::new(
        CoordSystem::Standard,
        [vec![1; 4], vec![0; 3], vec![1; 4], vec![0; 3]].concat(),
    )
    .unwrap();
    assert!(!has_obvious_compression(&t, &tri_only).unwrap());
}

#[test]
fn orientation_of_disk_cycles() {
    // every tetrahedron edge lies on exactly the disks the cycles claim
    let cycles: Vec<Vec<usize>> = (0..7).map(complex_cycle).collect();
    for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
        let on: Vec<usize> = (0..7).filter(|&ty| cycles[ty].contains(&e)).collect();
        let k = (0..3).filter(|&k| quad_type_for_pair(*a, *b) != k).map(|k| 4 + k);
        let mut want: Vec<usize> = vec![*a, *b];
        want.extend(k);
        want.sort();
        assert_eq!(on, want);
    }
}

fn complex_cycle(ty: usize) -> Vec<usize> {
    complex::tests_support::cycle(ty)
}
