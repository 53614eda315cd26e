//! Census of connected closed normal surfaces with bounded Euler
//! characteristic in an ideal triangulation.
//!
//! Surfaces are enumerated in quad coordinates on the cone cut out by the
//! closed-surface quad equations. A strict angle structure makes `−χ` a
//! positive functional on that cone, so each slice `χ = −m` of each maximal
//! admissible face is a polytope; its lattice points are lifted to canonical
//! standard vectors and split into connected components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cone::{DdOptions, SolutionCone};
use crate::counting::{CountError, Slice, DEFAULT_POINT_CAP};
use crate::normal::{
    closed_quad_system, euler_coefficients_quad, lift_quad, vertex_link_vectors, CoordSystem, NormalError,
    NormalVector, SurfaceComplex, DEFAULT_DISK_CAP,
};
use crate::par;
use crate::triangulation::{find_angle_structure, Kind, Strictness, Triangulation};

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Surfaces with `χ ≥ −max_neg_euler` are listed.
    pub max_neg_euler: usize,
    pub point_cap: usize,
    pub disk_cap: u64,
    pub dd: DdOptions,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_neg_euler: 8,
            point_cap: DEFAULT_POINT_CAP,
            disk_cap: DEFAULT_DISK_CAP,
            dd: DdOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    /// Canonical standard vector (no vertex-linking components).
    pub vector: NormalVector,
    pub euler_char: i64,
    pub orientable: bool,
}

impl CensusEntry {
    pub fn genus(&self) -> Option<i64> {
        self.orientable.then_some((2 - self.euler_char) / 2)
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub max_neg_euler: usize,
    /// Connected surfaces other than vertex links, sorted by decreasing `χ`,
    /// then vector.
    pub entries: Vec<CensusEntry>,
    /// `(euler_char, orientable)` of each vertex link.
    pub vertex_links: Vec<(i64, bool)>,
    pub rays: usize,
    pub faces: usize,
}

impl Census {
    /// Orientable surfaces by genus, vertex links excluded.
    pub fn by_genus(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for g in self.entries.iter().filter_map(CensusEntry::genus) {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    /// Orientable surfaces by genus, vertex links included.
    pub fn by_genus_with_links(&self) -> BTreeMap<i64, usize> {
        let mut out = self.by_genus();
        for &(chi, orientable) in &self.vertex_links {
            if orientable {
                *out.entry((2 - chi) / 2).or_insert(0) += 1;
            }
        }
        out
    }

    /// Nonorientable surfaces by Euler characteristic.
    pub fn nonorientable(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for e in self.entries.iter().filter(|e| !e.orientable) {
            *out.entry(e.euler_char).or_insert(0) += 1;
        }
        for &(chi, orientable) in &self.vertex_links {
            if !orientable {
                *out.entry(chi).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn total_with_links(&self) -> usize {
        self.entries.len() + self.vertex_links.len()
    }

    /// Plain-text tally.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ =
            writeln!(
            s,
            "connected closed normal surfaces with chi >= {} ({} vertex rays, {} maximal admissible faces)",
            -(self.max_neg_euler as i64), self.rays, self.faces
        );
        let _ = writeln!(s, "genus  count  with-vertex-links");
        let plain = self.by_genus();
        let with = self.by_genus_with_links();
        for (g, c) in &with {
            let _ = writeln!(s, "{g:>5}  {:>5}  {c:>17}", plain.get(g).copied().unwrap_or(0));
        }
        for (chi, c) in self.nonorientable() {
            let _ = writeln!(s, "nonorientable chi={chi}: {c}");
        }
        let _ = writeln!(s, "total (excluding vertex links): {}", self.total());
        let _ = writeln!(s, "total (including vertex links): {}", self.total_with_links());
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("euler_char,orientable,genus,vector\n");
        for e in &self.entries {
            let g = e.genus().map(|g| g.to_string()).unwrap_or_default();
            let _ = writeln!(s, "{},{},{g},\"{}\"", e.euler_char, e.orientable, e.vector);
        }
        s
    }
}

/// Lists every connected closed normal surface with `χ ≥ −max_neg_euler`.
pub fn census(tri: &Triangulation, opts: &CensusOptions) -> Result<Census, CountError> {
    if tri.kind() != Kind::Ideal {
        return Err(CountError::Unsupported(
            "the census runs on ideal triangulations".into(),
        ));
    }
    let angles = find_angle_structure(tri, Strictness::Strict)?
        .ok_or_else(|| CountError::Unsupported("the triangulation has no strict angle structure".into()))?;
    let neg_chi: Vec<BigRational> = euler_coefficients_quad(&angles).into_iter().map(|c| -c).collect();
    let system = closed_quad_system(tri)?;
    let rows = system.rows_i64();
    let dim = system.dim();
    let cone = SolutionCone::new(system, &opts.dd)?;
    let faces = cone.maximal_admissible_faces();

    let mut vertex_links = Vec::new();
    for link in vertex_link_vectors(tri) {
        let cx = SurfaceComplex::build(tri, &link, opts.disk_cap)?;
        for c in cx.components() {
            vertex_links.push((c.euler_char, c.orientable));
        }
    }

    let jobs: Vec<(usize, usize)> = (0..faces.len())
        .flat_map(|f| (1..=opts.max_neg_euler).map(move |m| (f, m)))
        .collect();
    let chunks = par::try_map(&jobs, |&(f, m)| {
        let slice = Slice {
            rows: &rows,
            dim,
            support: &faces[f].support,
            functional: &neg_chi,
        };
        slice.points(&BigRational::from_integer(m.into()), opts.point_cap)
    })?;
    let quads: BTreeSet<Vec<i64>> = chunks.into_iter().flatten().collect();
    let quads: Vec<Vec<i64>> = quads.into_iter().collect();

    let comps = par::try_map(&quads, |qv| -> Result<Vec<CensusEntry>, CountError> {
        let qn = NormalVector::new(CoordSystem::Quad, qv.clone())?;
        let lifted = lift_quad(tri, &qn)?.ok_or(NormalError::NotASolution)?;
        let cx = SurfaceComplex::build(tri, &lifted, opts.disk_cap)?;
        Ok(cx
            .components()
            .iter()
            .map(|c| CensusEntry {
                vector: c.vector.clone(),
                euler_char: c.euler_char,
                orientable: c.orientable,
            })
            .collect())
    })?;
    let mut seen: BTreeMap<NormalVector, CensusEntry> = BTreeMap::new();
    for e in comps.into_iter().flatten() {
        if e.euler_char >= -(opts.max_neg_euler.to_i64().unwrap_or(i64::MAX)) {
            seen.entry(e.vector.clone()).or_insert(e);
        }
    }
    let mut entries: Vec<CensusEntry> = seen.into_values().collect();
    entries.sort_by(|a, b| {
        b.euler_char
            .cmp(&a.euler_char)
            .then_with(|| a.vector.cmp(&b.vector))
    });
    Ok(Census {
        max_neg_euler: opts.max_neg_euler,
        entries,
        vertex_links,
        rays: cone.rays().len(),
        faces: faces.len(),
    })
}
