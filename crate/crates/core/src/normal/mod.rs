//! Normal surfaces in standard (7 per tetrahedron) and quad (3 per
//! tetrahedron) coordinates.
//!
//! Standard coordinates of tetrahedron `t` occupy `7t..7t+7`: the triangles
//! at vertices 0..3, then quad types 0..2, where quad type `k` separates
//! `{0, k+1}` from the other two vertices.

mod complex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rational_nullspace, rref, IntegerMatrix};
use crate::triangulation::{quad_type_for_pair, AngleStructure, Kind, Triangulation, EDGE_VERTICES};

pub use complex::{ComplexComponent, SurfaceComplex, DEFAULT_DISK_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordSystem {
    Standard,
    Quad,
}

impl CoordSystem {
    pub fn per_tet(self) -> usize {
        match self {
            CoordSystem::Standard => 7,
            CoordSystem::Quad => 3,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            CoordSystem::Standard => "std7t",
            CoordSystem::Quad => "quad3t",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalError {
    #[error("vector has {found} entries, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("expected {expected:?} coordinates")]
    WrongSystem { expected: CoordSystem },
    #[error("incompatible quadrilateral types in tetrahedron {tet}")]
    Incompatible { tet: usize },
    #[error("surface needs {required} disks, above the cap of {cap}")]
    CapExceeded { required: u64, cap: u64 },
    #[error("not a solution of the matching equations")]
    NotASolution,
    #[error("surface is not connected")]
    NotConnected,
    #[error("surface is nonorientable")]
    Nonorientable,
    #[error("{0}")]
    Unsupported(String),
    #[error("cannot parse normal vector: {0}")]
    Parse(String),
    #[error("coordinate overflow")]
    Overflow,
}

/// A vector of normal coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    system: CoordSystem,
    entries: Vec<i64>,
}

impl NormalVector {
    pub fn new(system: CoordSystem, entries: Vec<i64>) -> Result<Self, NormalError> {
        if entries.len() % system.per_tet() != 0 {
            return Err(NormalError::Dimension {
                expected: entries.len().next_multiple_of(system.per_tet()),
                found: entries.len(),
            });
        }
        if entries.iter().any(|&x| x < 0) {
            return Err(NormalError::Parse("negative coordinate".into()));
        }
        Ok(NormalVector { system, entries })
    }

    pub fn zero(system: CoordSystem, tets: usize) -> Self {
        NormalVector {
            system,
            entries: vec![0; system.per_tet() * tets],
        }
    }

    pub fn system(&self) -> CoordSystem {
        self.system
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn tets(&self) -> usize {
        self.entries.len() / self.system.per_tet()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&i| self.entries[i] != 0)
            .collect()
    }

    /// Triangle count at vertex `v` of tetrahedron `t` (standard only).
    pub fn triangle(&self, t: usize, v: usize) -> i64 {
        debug_assert_eq!(self.system, CoordSystem::Standard);
        self.entries[7 * t + v]
    }

    pub fn quad(&self, t: usize, k: usize) -> i64 {
        match self.system {
            CoordSystem::Standard => self.entries[7 * t + 4 + k],
            CoordSystem::Quad => self.entries[3 * t + k],
        }
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.entries.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn scaled(&self, m: i64) -> Result<Self, NormalError> {
        let entries = self
            .entries
            .iter()
            .map(|&x| x.checked_mul(m).ok_or(NormalError::Overflow))
            .collect::<Result<_, _>>()?;
        NormalVector::new(self.system, entries)
    }

    fn expect(&self, system: CoordSystem, tri: &Triangulation) -> Result<(), NormalError> {
        if self.system != system {
            return Err(NormalError::WrongSystem { expected: system });
        }
        let expected = system.per_tet() * tri.size();
        if self.entries.len() != expected {
            return Err(NormalError::Dimension {
                expected,
                found: self.entries.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.system.tag())?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NormalVector {
    type Err = NormalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (system, rest) = if let Some(r) = s.strip_prefix("std7t") {
            (CoordSystem::Standard, r)
        } else if let Some(r) = s.strip_prefix("quad3t") {
            (CoordSystem::Quad, r)
        } else {
            return Err(NormalError::Parse(format!("unknown coordinate tag in `{s}`")));
        };
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| NormalError::Parse(format!("missing brackets in `{s}`")))?;
        let entries = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| NormalError::Parse(format!("bad entry `{}`", x.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        NormalVector::new(system, entries)
    }
}

/// Linear equations whose nonnegative integer solutions are the normal
/// coordinate vectors.
#[derive(Clone, Debug)]
pub struct MatchingSystem {
    pub system: CoordSystem,
    pub matrix: IntegerMatrix,
}

impl MatchingSystem {
    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.matrix.rows())
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .map(|x| i64::try_from(x).expect("matching coefficient fits i64"))
                    .collect()
            })
            .collect()
    }

    pub fn is_solution(&self, v: &NormalVector) -> bool {
        v.system == self.system
            && v.entries.len() == self.dim()
            && self.rows_i64().iter().all(|row| {
                row.iter()
                    .zip(&v.entries)
                    .map(|(a, x)| i128::from(*a) * i128::from(*x))
                    .sum::<i128>()
                    == 0
            })
    }
}

/// Standard: one equation per glued face pair and corner. Quad: one equation
/// per edge class (ideal triangulations only).
pub fn matching_equations(tri: &Triangulation, system: CoordSystem) -> Result<MatchingSystem, NormalError> {
    let n = tri.size();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    match system {
        CoordSystem::Standard => {
            for (t, f, g) in tri.face_pairs() {
                let gf = g.perm.apply(f);
                for v in (0..4).filter(|&v| v != f) {
                    let gv = g.perm.apply(v);
                    let mut row = vec![0i64; 7 * n];
                    row[7 * t + v] += 1;
                    row[7 * t + 4 + quad_type_for_pair(v, f)] += 1;
                    row[7 * g.tet + gv] -= 1;
                    row[7 * g.tet + 4 + quad_type_for_pair(gv, gf)] -= 1;
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        CoordSystem::Quad => {
            if tri.kind() != Kind::Ideal {
                return Err(NormalError::Unsupported(
                    "quad coordinates need an ideal triangulation".into(),
                ));
            }
            for e in tri.edges() {
                let mut row = vec![0i64; 3 * n];
                for emb in &e.embeddings {
                    let p = emb.perm.images().map(usize::from);
                    row[3 * emb.tet + quad_type_for_pair(p[0], p[2])] += 1;
                    row[3 * emb.tet + quad_type_for_pair(p[0], p[3])] -= 1;
                }
                rows.push(row);
            }
        }
    }
    Ok(MatchingSystem {
        system,
        matrix: IntegerMatrix::from_rows_with_cols(&rows, system.per_tet() * n),
    })
}

/// Quad-coordinate equations cutting out the vectors that lift to closed
/// surfaces (no spinning into the cusps): the image of the standard
/// equations after eliminating the triangle coordinates. The result has
/// independent rows.
pub fn closed_quad_system(tri: &Triangulation) -> Result<MatchingSystem, NormalError> {
    let std = matching_equations(tri, CoordSystem::Standard)?;
    let n = tri.size();
    let rows = std.matrix.to_rational_rows();
    // left kernel of the triangle block
    let tri_cols: Vec<usize> = (0..n).flat_map(|t| (0..4).map(move |v| 7 * t + v)).collect();
    let quad_cols: Vec<usize> = (0..n).flat_map(|t| (0..3).map(move |k| 7 * t + 4 + k)).collect();
    let at_t: Vec<Vec<BigRational>> = tri_cols
        .iter()
        .map(|&c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    let left = rational_nullspace(&at_t, rows.len());
    let mut out: Vec<Vec<BigRational>> = left
        .iter()
        .map(|y| {
            quad_cols
                .iter()
                .map(|&c| y.iter().zip(&rows).map(|(yi, r)| yi * &r[c]).sum::<BigRational>())
                .collect()
        })
        .collect();
    out.retain(|r| r.iter().any(|x| !x.is_zero()));
    let reduced = rref(&out, 3 * n);
    let int_rows: Vec<Vec<BigInt>> = reduced.rows[..reduced.rank()]
        .iter()
        .map(|r| {
            let lcm = r
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let v: Vec<BigInt> = r
                .iter()
                .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
                .collect();
            crate::exact::primitive(&v)
        })
        .collect();
    Ok(MatchingSystem {
        system: CoordSystem::Quad,
        matrix: IntegerMatrix::from_rows_with_cols(&int_rows, 3 * n),
    })
}

pub fn is_admissible(v: &NormalVector) -> bool {
    (0..v.tets()).all(|t| (0..3).filter(|&k| v.quad(t, k) != 0).count() <= 1)
}

/// Per-coordinate coefficients of the weight functional (standard).
pub fn weight_coefficients(tri: &Triangulation) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(7 * tri.size());
    let inv = |t: usize, a: usize, b: usize| {
        let e = crate::triangulation::edge_number(a, b);
        BigRational::new(
            BigInt::one(),
            BigInt::from(tri.edges()[tri.edge_class(t, e)].valence()),
        )
    };
    for t in 0..tri.size() {
        for v in 0..4 {
            out.push((0..4).filter(|&x| x != v).map(|x| inv(t, v, x)).sum());
        }
        for k in 0..3 {
            out.push(
                EDGE_VERTICES
                    .iter()
                    .filter(|[a, b]| quad_type_for_pair(*a, *b) != k)
                    .map(|[a, b]| inv(t, *a, *b))
                    .sum(),
            );
        }
    }
    out
}

/// Per-coordinate coefficients of the Euler characteristic (standard).
pub fn euler_coefficients(tri: &Triangulation) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    weight_coefficients(tri)
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            let sides = if i % 7 < 4 { 3 } else { 4 };
            BigRational::one() - &half * BigInt::from(sides) + w
        })
        .collect()
}

fn apply(coeffs: &[BigRational], v: &NormalVector) -> BigRational {
    coeffs
        .iter()
        .zip(&v.entries)
        .filter(|(_, &x)| x != 0)
        .map(|(c, &x)| c * BigInt::from(x))
        .sum()
}

pub fn weight(tri: &Triangulation, v: &NormalVector) -> Result<BigRational, NormalError> {
    v.expect(CoordSystem::Standard, tri)?;
    Ok(apply(&weight_coefficients(tri), v))
}

pub fn euler_char_standard(tri: &Triangulation, v: &NormalVector) -> Result<BigRational, NormalError> {
    v.expect(CoordSystem::Standard, tri)?;
    Ok(apply(&euler_coefficients(tri), v))
}

/// Quad coefficients of χ under an angle structure: quad type `k` of
/// tetrahedron `t` contributes `-angle(t, k)` (angles in units of π).
pub fn euler_coefficients_quad(angles: &AngleStructure) -> Vec<BigRational> {
    angles
        .angles
        .iter()
        .flat_map(|a| a.iter().map(|x| -x.clone()))
        .collect()
}

pub fn euler_char_quad(
    tri: &Triangulation,
    v: &NormalVector,
    angles: &AngleStructure,
) -> Result<BigRational, NormalError> {
    v.expect(CoordSystem::Quad, tri)?;
    Ok(apply(&euler_coefficients_quad(angles), v))
}

/// Entrywise sum of compatible vectors.
pub fn haken_sum(a: &NormalVector, b: &NormalVector) -> Result<NormalVector, NormalError> {
    if a.system != b.system {
        return Err(NormalError::WrongSystem { expected: a.system });
    }
    if a.entries.len() != b.entries.len() {
        return Err(NormalError::Dimension {
            expected: a.entries.len(),
            found: b.entries.len(),
        });
    }
    for t in 0..a.tets() {
        let qa = (0..3).find(|&k| a.quad(t, k) != 0);
        let qb = (0..3).find(|&k| b.quad(t, k) != 0);
        if let (Some(x), Some(y)) = (qa, qb) {
            if x != y {
                return Err(NormalError::Incompatible { tet: t });
            }
        }
    }
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.checked_add(*y).ok_or(NormalError::Overflow))
        .collect::<Result<_, _>>()?;
    NormalVector::new(a.system, entries)
}

/// One vector per vertex class: one triangle in each corner of that class.
pub fn vertex_link_vectors(tri: &Triangulation) -> Vec<NormalVector> {
    tri.vertices()
        .iter()
        .map(|vc| {
            let mut v = NormalVector::zero(CoordSystem::Standard, tri.size());
            for &(t, c) in &vc.corners {
                v.entries[7 * t + c] = 1;
            }
            v
        })
        .collect()
}

/// Removes as many vertex-link copies as possible; returns the canonical
/// part and the multiplicity of each vertex class's link.
pub fn strip_vertex_links(
    tri: &Triangulation,
    v: &NormalVector,
) -> Result<(NormalVector, Vec<i64>), NormalError> {
    v.expect(CoordSystem::Standard, tri)?;
    let mut out = v.clone();
    let mut mults = Vec::with_capacity(tri.vertices().len());
    for vc in tri.vertices() {
        let m = vc
            .corners
            .iter()
            .map(|&(t, c)| v.entries[7 * t + c])
            .min()
            .unwrap_or(0);
        for &(t, c) in &vc.corners {
            out.entries[7 * t + c] -= m;
        }
        mults.push(m);
    }
    Ok((out, mults))
}

pub fn is_vertex_link(tri: &Triangulation, v: &NormalVector) -> Result<bool, NormalError> {
    let (rest, mults) = strip_vertex_links(tri, v)?;
    Ok(rest.is_zero() && mults.iter().sum::<i64>() == 1)
}

pub fn project_to_quad(v: &NormalVector) -> NormalVector {
    match v.system {
        CoordSystem::Quad => v.clone(),
        CoordSystem::Standard => NormalVector {
            system: CoordSystem::Quad,
            entries: (0..v.tets())
                .flat_map(|t| (0..3).map(move |k| v.quad(t, k)))
                .collect(),
        },
    }
}

/// The canonical standard vector with the given quads (no vertex-linking
/// components), or `None` when the quads do not describe a closed surface.
pub fn lift_quad(tri: &Triangulation, q: &NormalVector) -> Result<Option<NormalVector>, NormalError> {
    q.expect(CoordSystem::Quad, tri)?;
    let n = tri.size();
    let mut tval: Vec<Option<i64>> = vec![None; 4 * n];
    // adjacency: (t, v) -> [(t', v', delta)] with t'[v'] = t[v] + delta
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); 4 * n];
    for (t, f, g) in tri.face_pairs() {
        let gf = g.perm.apply(f);
        for v in (0..4).filter(|&v| v != f) {
            let gv = g.perm.apply(v);
            let delta = q.quad(t, quad_type_for_pair(v, f)) - q.quad(g.tet, quad_type_for_pair(gv, gf));
            adj[4 * t + v].push((4 * g.tet + gv, delta));
            adj[4 * g.tet + gv].push((4 * t + v, -delta));
        }
    }
    let mut out = NormalVector::zero(CoordSystem::Standard, n);
    for vc in tri.vertices() {
        let (t0, c0) = vc.corners[0];
        let start = 4 * t0 + c0;
        tval[start] = Some(0);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let base = tval[x].unwrap();
            for &(y, d) in &adj[x] {
                let want = base + d;
                match tval[y] {
                    None => {
                        tval[y] = Some(want);
                        stack.push(y);
                    }
                    Some(have) if have != want => return Ok(None),
                    Some(_) => {}
                }
            }
        }
        let min = vc
            .corners
            .iter()
            .map(|&(t, c)| tval[4 * t + c].unwrap())
            .min()
            .unwrap();
        for &(t, c) in &vc.corners {
            out.entries[7 * t + c] = tval[4 * t + c].unwrap() - min;
        }
    }
    for t in 0..n {
        for k in 0..3 {
            out.entries[7 * t + 4 + k] = q.quad(t, k);
        }
    }
    Ok(Some(out))
}

/// True when, around some edge class, every incident tetrahedron carries a
/// quad of the type disjoint from that edge, so the quads close up into an
/// annulus encircling the edge.
pub fn has_obvious_compression(tri: &Triangulation, v: &NormalVector) -> Result<bool, NormalError> {
    v.expect(CoordSystem::Standard, tri)?;
    Ok(tri.edges().iter().any(|e| {
        !e.boundary
            && e.embeddings
                .iter()
                .all(|emb| v.quad(emb.tet, quad_type_for_pair(emb.perm.apply(0), emb.perm.apply(1))) > 0)
    }))
}

pub fn connected_components(
    tri: &Triangulation,
    v: &NormalVector,
    cap: u64,
) -> Result<Vec<NormalVector>, NormalError> {
    Ok(SurfaceComplex::build(tri, v, cap)?
        .components()
        .iter()
        .map(|c| c.vector.clone())
        .collect())
}

pub fn is_orientable(tri: &Triangulation, v: &NormalVector) -> Result<bool, NormalError> {
    let cx = SurfaceComplex::build(tri, v, DEFAULT_DISK_CAP)?;
    Ok(cx.components().iter().all(|c| c.orientable))
}

/// Genus of a connected orientable surface.
pub fn genus(tri: &Triangulation, v: &NormalVector) -> Result<u64, NormalError> {
    let cx = SurfaceComplex::build(tri, v, DEFAULT_DISK_CAP)?;
    match cx.components() {
        [c] if c.orientable => Ok(((2 - c.euler_char) / 2) as u64),
        [_] => Err(NormalError::Nonorientable),
        _ => Err(NormalError::NotConnected),
    }
}

#[cfg(test)]
mod tests;
