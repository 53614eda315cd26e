use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::CountError;
use crate::cone::{
    carries_vertex_link, classify_dependent_faces, extreme_rays, AdmissibleFace, DdOptions, DependenceData,
};
use crate::exact::{
    int_to_rational, lattice_complement, primitive, rational_rank, saturate, to_bigint_vec,
    LatticeDecomposition,
};
use crate::normal::{
    euler_coefficients, is_admissible, matching_equations, vertex_link_vectors, weight_coefficients,
    CoordSystem, MatchingSystem, NormalVector,
};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug)]
pub struct LwSurface {
    pub name: String,
    pub vector: NormalVector,
}

/// A face of the projective solution space with its certification flags and
/// isotopy subspace `W`.
#[derive(Clone, Debug)]
pub struct LwFace {
    pub name: String,
    /// Indices into [`LwComplex::surfaces`], increasing.
    pub rays: Vec<usize>,
    pub support: Vec<usize>,
    pub complete: bool,
    pub essential: bool,
    pub least_weight: bool,
    /// Saturated Z-basis of `W ∩ Z^n`.
    pub w_basis: Vec<Vec<BigInt>>,
    pub decomposition: LatticeDecomposition,
    pub dependence: DependenceData,
}

impl LwFace {
    pub fn is_counted(&self) -> bool {
        self.complete && self.essential
    }

    pub fn as_admissible_face(&self) -> AdmissibleFace {
        let mut f = AdmissibleFace::new(self.support.clone(), self.rays.clone());
        f.complete = Some(self.complete);
        f.essential = Some(self.essential);
        f.least_weight = Some(self.least_weight);
        f
    }
}

/// Certified lw-face data for one triangulation, validated on load.
#[derive(Clone, Debug)]
pub struct LwComplex {
    /// The `triangulation` header value as written.
    pub source: String,
    pub triangulation: Triangulation,
    pub system: MatchingSystem,
    pub surfaces: Vec<LwSurface>,
    pub faces: Vec<LwFace>,
    /// `note` lines, kept verbatim.
    pub notes: Vec<String>,
    /// `−χ/2` as a linear functional on standard coordinates.
    pub degree: Vec<BigRational>,
}

impl LwComplex {
    pub fn face(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    pub fn surface(&self, name: &str) -> Option<usize> {
        self.surfaces.iter().position(|s| s.name == name)
    }

    pub fn vectors(&self) -> Vec<NormalVector> {
        self.surfaces.iter().map(|s| s.vector.clone()).collect()
    }

    /// Serializes back to the line format accepted by [`parse_lw`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("lw-complex v1\n");
        out.push_str(&format!("triangulation {}\ncoords std7t\n", self.source));
        for n in &self.notes {
            out.push_str(&format!("note {n}\n"));
        }
        for s in &self.surfaces {
            out.push_str(&format!("surface {} {}\n", s.name, s.vector));
        }
        for f in &self.faces {
            let names: Vec<&str> = f.rays.iter().map(|&r| self.surfaces[r].name.as_str()).collect();
            out.push_str(&format!(
                "face {} vertices={} complete={} essential={} lw={}\n",
                f.name,
                names.join(","),
                f.complete,
                f.essential,
                f.least_weight
            ));
        }
        for f in &self.faces {
            for w in &f.w_basis {
                let e: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("wbasis {} std7t[{}]\n", f.name, e.join(",")));
            }
        }
        out
    }
}

struct RawFace {
    line: usize,
    name: String,
    vertices: Vec<String>,
    complete: bool,
    essential: bool,
    lw: bool,
}

fn lw_err(line: usize, msg: impl Into<String>) -> CountError {
    CountError::Lw {
        line,
        msg: msg.into(),
    }
}

fn invalid(face: &str, msg: impl Into<String>) -> CountError {
    CountError::Validation {
        face: face.to_string(),
        msg: msg.into(),
    }
}

fn parse_signed_vector(s: &str) -> Option<Vec<i64>> {
    let inner = s.trim().strip_prefix("std7t[")?.strip_suffix(']')?;
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

fn parse_bool(v: &str, line: usize) -> Result<bool, CountError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(lw_err(line, format!("expected a boolean, found `{v}`"))),
    }
}

/// Reads an LW file; a relative triangulation path is resolved against the
/// file's directory.
pub fn load_lw(path: &Path) -> Result<LwComplex, CountError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CountError::Io(format!("{}: {e}", path.display())))?;
    parse_lw(&text, path.parent())
}

pub fn parse_lw(text: &str, base_dir: Option<&Path>) -> Result<LwComplex, CountError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "lw-complex v1")) => {}
        Some((n, l)) => return Err(lw_err(n, format!("expected `lw-complex v1`, found `{l}`"))),
        None => return Err(lw_err(0, "empty file")),
    }
    let mut source = None;
    let mut coords_seen = false;
    let mut notes = Vec::new();
    let mut surfaces: Vec<(usize, String, NormalVector)> = Vec::new();
    let mut raw_faces: Vec<RawFace> = Vec::new();
    let mut wlines: Vec<(usize, String, Vec<i64>)> = Vec::new();
    for (n, l) in lines {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "triangulation" => source = Some(rest.to_string()),
            "coords" => {
                if rest != "std7t" {
                    return Err(lw_err(n, format!("unsupported coordinates `{rest}`")));
                }
                coords_seen = true;
            }
            "note" => notes.push(rest.to_string()),
            "surface" => {
                let (name, vec) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| lw_err(n, "surface needs a name and a vector"))?;
                let v: NormalVector = vec.trim().parse().map_err(|e| lw_err(n, format!("{e}")))?;
                if v.system() != CoordSystem::Standard {
                    return Err(lw_err(n, "surfaces must be in std7t coordinates"));
                }
                if surfaces.iter().any(|(_, s, _)| s == name) {
                    return Err(lw_err(n, format!("duplicate surface `{name}`")));
                }
                surfaces.push((n, name.to_string(), v));
            }
            "face" => {
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| lw_err(n, "face needs a name"))?;
                let mut f = RawFace {
                    line: n,
                    name: name.to_string(),
                    vertices: Vec::new(),
                    complete: false,
                    essential: false,
                    lw: false,
                };
                for p in parts {
                    let (k, v) = p
                        .split_once('=')
                        .ok_or_else(|| lw_err(n, format!("expected key=value, found `{p}`")))?;
                    match k {
                        "vertices" => f.vertices = v.split(',').map(str::to_string).collect(),
                        "complete" => f.complete = parse_bool(v, n)?,
                        "essential" => f.essential = parse_bool(v, n)?,
                        "lw" => f.lw = parse_bool(v, n)?,
                        _ => return Err(lw_err(n, format!("unknown face field `{k}`"))),
                    }
                }
                if f.vertices.is_empty() {
                    return Err(lw_err(n, format!("face `{name}` lists no vertices")));
                }
                if raw_faces.iter().any(|g| g.name == f.name) {
                    return Err(lw_err(n, format!("duplicate face `{name}`")));
                }
                raw_faces.push(f);
            }
            "wbasis" => {
                let (name, vec) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| lw_err(n, "wbasis needs a face name and a vector"))?;
                let v = parse_signed_vector(vec).ok_or_else(|| lw_err(n, "malformed std7t vector"))?;
                wlines.push((n, name.to_string(), v));
            }
            _ => return Err(lw_err(n, format!("unknown directive `{key}`"))),
        }
    }
    let source = source.ok_or_else(|| lw_err(0, "missing `triangulation` line"))?;
    if !coords_seen {
        return Err(lw_err(0, "missing `coords std7t` line"));
    }
    let tri = resolve_triangulation(&source, base_dir)?;

    let system = matching_equations(&tri, CoordSystem::Standard)?;
    let dim = system.dim();
    for (n, name, v) in &surfaces {
        if v.entries().len() != dim {
            return Err(lw_err(
                *n,
                format!(
                    "surface `{name}` has {} entries, expected {dim}",
                    v.entries().len()
                ),
            ));
        }
        if !system.is_solution(v) {
            return Err(lw_err(
                *n,
                format!("surface `{name}` does not satisfy the matching equations"),
            ));
        }
        if !is_admissible(v) {
            return Err(lw_err(*n, format!("surface `{name}` is not admissible")));
        }
    }
    let surfaces: Vec<LwSurface> = surfaces
        .into_iter()
        .map(|(_, name, vector)| LwSurface { name, vector })
        .collect();
    let vectors: Vec<NormalVector> = surfaces.iter().map(|s| s.vector.clone()).collect();

    let mut wmap: BTreeMap<String, Vec<Vec<BigInt>>> = BTreeMap::new();
    for (n, name, v) in wlines {
        if !raw_faces.iter().any(|f| f.name == name) {
            return Err(lw_err(n, format!("wbasis for unknown face `{name}`")));
        }
        if v.len() != dim {
            return Err(lw_err(
                n,
                format!("wbasis vector has {} entries, expected {dim}", v.len()),
            ));
        }
        wmap.entry(name).or_default().push(to_bigint_vec(&v));
    }

    let weight = weight_coefficients(&tri);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let degree: Vec<BigRational> = euler_coefficients(&tri).into_iter().map(|c| -c * &half).collect();
    let links = vertex_link_vectors(&tri);
    let rows = system.rows_i64();

    let mut faces = Vec::with_capacity(raw_faces.len());
    for rf in &raw_faces {
        let mut rays = Vec::new();
        for v in &rf.vertices {
            let i = surfaces
                .iter()
                .position(|s| &s.name == v)
                .ok_or_else(|| lw_err(rf.line, format!("face `{}` names unknown surface `{v}`", rf.name)))?;
            rays.push(i);
        }
        rays.sort_unstable();
        rays.dedup();
        let mut sum = vec![0i64; dim];
        for &r in &rays {
            for (s, x) in sum.iter_mut().zip(vectors[r].entries()) {
                *s += x;
            }
        }
        let sum = NormalVector::new(CoordSystem::Standard, sum)?;
        if !is_admissible(&sum) {
            return Err(invalid(&rf.name, "vertices are not mutually compatible"));
        }
        let support = sum.support();
        check_face_rays(&rows, &support, &rays, &vectors, &rf.name)?;
        for &r in &rays {
            let d: BigRational = vectors[r]
                .entries()
                .iter()
                .zip(&degree)
                .filter(|(x, _)| **x != 0)
                .map(|(x, c)| c * BigInt::from(*x))
                .sum();
            if d <= BigRational::zero() {
                return Err(invalid(
                    &rf.name,
                    format!("Euler characteristic is not negative on `{}`", surfaces[r].name),
                ));
            }
        }
        let face_vectors: Vec<Vec<BigInt>> = rays.iter().map(|&r| vectors[r].to_bigint()).collect();
        let w_raw = wmap.get(&rf.name).cloned().unwrap_or_default();
        let ambient = saturate(&face_vectors, dim);
        let decomposition = lattice_complement(&ambient, &w_raw).map_err(|e| match e {
            crate::exact::ExactError::NotInSpan => {
                invalid(&rf.name, "W is not contained in the span of the face")
            }
            other => CountError::Exact(other),
        })?;
        for w in &decomposition.w {
            let s: BigRational = w.iter().zip(&weight).map(|(x, c)| c * x).sum();
            if !s.is_zero() {
                return Err(invalid(
                    &rf.name,
                    "W is not contained in the kernel of the weight",
                ));
            }
        }
        let dependence = classify_dependent_faces(&system, &vectors, &rays, &decomposition.w, Some(&weight))
            .map_err(|e| invalid(&rf.name, e.to_string()))?;
        let face = LwFace {
            name: rf.name.clone(),
            rays,
            support,
            complete: rf.complete,
            essential: rf.essential,
            least_weight: rf.lw,
            w_basis: decomposition.w.clone(),
            decomposition,
            dependence,
        };
        if face.essential && carries_vertex_link(&face.as_admissible_face(), &links) {
            return Err(invalid(
                &rf.name,
                "flagged essential but carries a vertex link, and no face carrying a vertex link is essential",
            ));
        }
        faces.push(face);
    }

    for d in &faces {
        for c in &faces {
            if d.name == c.name || !d.rays.iter().all(|r| c.rays.contains(r)) {
                continue;
            }
            let c_rows: Vec<Vec<BigRational>> = c
                .w_basis
                .iter()
                .map(|w| w.iter().map(int_to_rational).collect())
                .collect();
            let mut both = c_rows.clone();
            both.extend(d.w_basis.iter().map(|w| w.iter().map(int_to_rational).collect()));
            if rational_rank(&both, dim) != rational_rank(&c_rows, dim) {
                return Err(invalid(
                    &d.name,
                    format!(
                        "W of face `{}` is not contained in W of the larger face `{}`",
                        d.name, c.name
                    ),
                ));
            }
        }
    }

    Ok(LwComplex {
        source,
        triangulation: tri,
        system,
        surfaces,
        faces,
        notes,
        degree,
    })
}

fn resolve_triangulation(source: &str, base_dir: Option<&Path>) -> Result<Triangulation, CountError> {
    let looks_like_path = source.contains('/') || source.contains('.');
    if looks_like_path {
        let mut p = PathBuf::from(source);
        if p.is_relative() {
            if let Some(b) = base_dir {
                p = b.join(p);
            }
        }
        let text =
            std::fs::read_to_string(&p).map_err(|e| CountError::Io(format!("{}: {e}", p.display())))?;
        Ok(Triangulation::load(&text)?)
    } else {
        Ok(Triangulation::load(source)?)
    }
}

/// The extreme rays of the face cut out by `support` must be exactly the
/// listed vertices, up to positive scaling.
fn check_face_rays(
    rows: &[Vec<i64>],
    support: &[usize],
    rays: &[usize],
    vectors: &[NormalVector],
    name: &str,
) -> Result<(), CountError> {
    let local_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| support.iter().map(|&c| r[c]).collect::<Vec<i64>>())
        .filter(|r: &Vec<i64>| r.iter().any(|&x| x != 0))
        .collect();
    let opts = DdOptions {
        require_admissible: false,
        prune_admissible: false,
        ..DdOptions::default()
    };
    let actual =
        extreme_rays(&local_rows, support.len(), &[], &opts).map_err(|e| invalid(name, e.to_string()))?;
    let mut listed: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|&r| {
            let local: Vec<BigInt> = support
                .iter()
                .map(|&c| BigInt::from(vectors[r].entries()[c]))
                .collect();
            primitive(&local)
        })
        .collect();
    listed.sort();
    let mut found: Vec<Vec<BigInt>> = actual.iter().map(|r| primitive(&to_bigint_vec(r))).collect();
    found.sort();
    if listed != found {
        return Err(invalid(
            name,
            format!(
                "listed vertices do not span the face: it has {} extreme rays, {} listed",
                found.len(),
                listed.len()
            ),
        ));
    }
    Ok(())
}
