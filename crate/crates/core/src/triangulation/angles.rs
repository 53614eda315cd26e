use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{quad_type_for_pair, TriError, Triangulation};
use crate::exact::{lp_feasible, IntegerMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    PartiallyFlat,
}

/// Angles in units of π, indexed like quad types: `angles[t][k]` sits on
/// the two edges of tetrahedron `t` that quad type `k` is disjoint from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleStructure {
    pub angles: Vec<[BigRational; 3]>,
}

impl AngleStructure {
    /// Checks the per-tetrahedron and per-edge sums exactly.
    pub fn is_valid_for(&self, tri: &Triangulation, strictness: Strictness) -> bool {
        if self.angles.len() != tri.size() {
            return false;
        }
        let one = BigRational::one();
        let tets_ok = self.angles.iter().all(|a| {
            let ok_sign = match strictness {
                Strictness::Strict => a.iter().all(Signed::is_positive),
                Strictness::PartiallyFlat => a.iter().all(|x| !x.is_negative()),
            };
            ok_sign && a.iter().sum::<BigRational>() == one
        });
        let two = BigRational::from_integer(2.into());
        tets_ok
            && tri.edges().iter().all(|e| {
                e.embeddings
                    .iter()
                    .map(|emb| {
                        let k = quad_type_for_pair(emb.perm.apply(0), emb.perm.apply(1));
                        self.angles[emb.tet][k].clone()
                    })
                    .sum::<BigRational>()
                    == two
            })
    }

    /// The angle at edge `e` (tetrahedron edge numbering) of tetrahedron `t`.
    pub fn at_edge(&self, t: usize, e: usize) -> &BigRational {
        let [a, b] = super::EDGE_VERTICES[e];
        &self.angles[t][quad_type_for_pair(a, b)]
    }
}

/// Exact LP search for an angle structure.
pub fn find_angle_structure(
    tri: &Triangulation,
    strictness: Strictness,
) -> Result<Option<AngleStructure>, TriError> {
    if !tri.is_closed_up() {
        return Err(TriError::Unsupported(
            "angle structures need every face glued".into(),
        ));
    }
    let n = tri.size();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 0..n {
        let mut row = vec![BigInt::zero(); 3 * n];
        for k in 0..3 {
            row[3 * t + k] = BigInt::one();
        }
        rows.push(row);
        rhs.push(BigInt::one());
    }
    for e in tri.edges() {
        let mut row = vec![BigInt::zero(); 3 * n];
        for emb in &e.embeddings {
            let k = quad_type_for_pair(emb.perm.apply(0), emb.perm.apply(1));
            row[3 * emb.tet + k] += 1;
        }
        rows.push(row);
        rhs.push(BigInt::from(2));
    }
    let a = IntegerMatrix::from_rows_with_cols(&rows, 3 * n);
    let nonneg: Vec<usize> = (0..3 * n).collect();
    let strict: Vec<Vec<usize>> = match strictness {
        Strictness::Strict => (0..3 * n).map(|i| vec![i]).collect(),
        Strictness::PartiallyFlat => Vec::new(),
    };
    let sol =
        lp_feasible(&a, Some(&rhs), &nonneg, &strict).map_err(|e| TriError::Unsupported(e.to_string()))?;
    Ok(sol.map(|x| AngleStructure {
        angles: x
            .chunks(3)
            .map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
            .collect(),
    }))
}
