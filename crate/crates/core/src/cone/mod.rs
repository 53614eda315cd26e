//! Normal solution cones: extreme rays, admissible faces, carriers and the
//! dependent/independent subfaces of a face relative to an isotopy subspace.

mod dd;
mod dependence;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::normal::{CoordSystem, MatchingSystem, NormalVector};

pub use dd::{extreme_rays, is_extreme, DdOptions};
pub use dependence::{classify_dependent_faces, face_lattice, DependenceData, SubFace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("{0}")]
    Dimension(String),
    #[error("integer overflow while combining rays")]
    Overflow,
    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("vector is not in the solution cone")]
    NotASolution,
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coordinate groups that admissibility restricts: the three quad
/// coordinates of each tetrahedron.
pub fn quad_groups(system: CoordSystem, tets: usize) -> Vec<Vec<usize>> {
    (0..tets)
        .map(|t| match system {
            CoordSystem::Standard => (7 * t + 4..7 * t + 7).collect(),
            CoordSystem::Quad => (3 * t..3 * t + 3).collect(),
        })
        .collect()
}

/// A face of the solution cone cut out by zeroing every coordinate outside
/// `support`. Flags are `None` until something certifies them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFace {
    pub support: Vec<usize>,
    /// Indices into the owning ray list, increasing.
    pub rays: Vec<usize>,
    pub least_weight: Option<bool>,
    pub complete: Option<bool>,
    pub essential: Option<bool>,
}

impl AdmissibleFace {
    pub fn new(support: Vec<usize>, rays: Vec<usize>) -> Self {
        AdmissibleFace {
            support,
            rays,
            least_weight: None,
            complete: None,
            essential: None,
        }
    }

    pub fn contains_support(&self, v: &NormalVector) -> bool {
        v.support().iter().all(|i| self.support.binary_search(i).is_ok())
    }
}

/// The solution cone `{x ≥ 0 : A x = 0}` with its admissible vertex rays.
#[derive(Clone, Debug)]
pub struct SolutionCone {
    system: MatchingSystem,
    groups: Vec<Vec<usize>>,
    rays: Vec<NormalVector>,
}

impl SolutionCone {
    pub fn new(system: MatchingSystem, opts: &DdOptions) -> Result<Self, ConeError> {
        let tets = system.dim() / system.system.per_tet();
        let groups = quad_groups(system.system, tets);
        let raw = extreme_rays(&system.rows_i64(), system.dim(), &groups, opts)?;
        let rays = raw
            .into_iter()
            .map(|r| NormalVector::new(system.system, r).expect("nonnegative ray"))
            .collect();
        Ok(SolutionCone { system, groups, rays })
    }

    /// Wraps rays computed elsewhere; each must solve the system.
    pub fn from_rays(system: MatchingSystem, rays: Vec<NormalVector>) -> Result<Self, ConeError> {
        if rays.iter().any(|r| !system.is_solution(r)) {
            return Err(ConeError::NotASolution);
        }
        let tets = system.dim() / system.system.per_tet();
        let groups = quad_groups(system.system, tets);
        Ok(SolutionCone { system, groups, rays })
    }

    pub fn system(&self) -> &MatchingSystem {
        &self.system
    }

    pub fn rays(&self) -> &[NormalVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    fn compatible(&self, a: &NormalVector, b: &NormalVector) -> bool {
        dd::admissible_support(|i| a.entries()[i] != 0 || b.entries()[i] != 0, &self.groups)
    }

    fn face_from_support(&self, support: Vec<usize>) -> AdmissibleFace {
        let set: BTreeSet<usize> = support.iter().copied().collect();
        let rays = (0..self.rays.len())
            .filter(|&r| self.rays[r].support().iter().all(|i| set.contains(i)))
            .collect();
        AdmissibleFace::new(support, rays)
    }

    /// Maximal faces whose support is admissible, found as maximal cliques of
    /// the pairwise-compatibility graph on the admissible rays.
    pub fn maximal_admissible_faces(&self) -> Vec<AdmissibleFace> {
        let idx: Vec<usize> = (0..self.rays.len())
            .filter(|&i| dd::admissible_support(|c| self.rays[i].entries()[c] != 0, &self.groups))
            .collect();
        let m = idx.len();
        let adj: Vec<Vec<bool>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| a != b && self.compatible(&self.rays[idx[a]], &self.rays[idx[b]]))
                    .collect()
            })
            .collect();
        let mut cliques = Vec::new();
        bron_kerbosch(&adj, Vec::new(), (0..m).collect(), Vec::new(), &mut cliques);
        let mut faces: Vec<AdmissibleFace> = cliques
            .into_iter()
            .map(|c| {
                let support: BTreeSet<usize> = c.iter().flat_map(|&k| self.rays[idx[k]].support()).collect();
                self.face_from_support(support.into_iter().collect())
            })
            .collect();
        faces.sort_by(|a, b| a.support.cmp(&b.support));
        faces.dedup_by(|a, b| a.support == b.support);
        faces
    }

    /// The smallest face containing `v`.
    pub fn carrier(&self, v: &NormalVector) -> Result<AdmissibleFace, ConeError> {
        if !self.system.is_solution(v) {
            return Err(ConeError::NotASolution);
        }
        Ok(self.face_from_support(v.support()))
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        if !r.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = *p
        .iter()
        .chain(&x)
        .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// True iff some vertex-link vector has support inside the face.
pub fn carries_vertex_link(face: &AdmissibleFace, links: &[NormalVector]) -> bool {
    links.iter().any(|l| face.contains_support(l))
}

#[cfg(test)]
mod tests;
