//! Ideal and finite 3-dimensional triangulations: gluing data, skeleta,
//! vertex links, F₂ homology and angle structures.

mod angles;
mod homology;
mod isosig;
mod perm;
mod skeleton;

use std::fmt::Write as _;

use thiserror::Error;

pub use angles::{find_angle_structure, AngleStructure, Strictness};
pub use homology::{homology_f2_check, HomologyCheck};
pub use isosig::{decode_isosig, encode_isosig};
pub use perm::Perm4;
pub use skeleton::{EdgeClass, EdgeEmbedding, VertexClass};

/// Vertices of edge `e` of a tetrahedron, edges numbered 01, 02, 03, 12, 13, 23.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

pub fn edge_number(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The quadrilateral type that keeps vertices `a` and `b` on the same side,
/// equivalently the quad type disjoint from edge `ab` and from the opposite
/// edge. Quad type `k` separates `{0, k+1}` from the other two vertices.
pub fn quad_type_for_pair(a: usize, b: usize) -> usize {
    const BY_EDGE: [usize; 6] = [0, 1, 2, 2, 1, 0];
    BY_EDGE[edge_number(a, b)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ideal,
    Finite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("tetrahedron {tet} face {face}: {msg}")]
    Gluing { tet: usize, face: usize, msg: String },
    #[error("isomorphism signature: {0}")]
    IsoSig(String),
    #[error("{0}")]
    Unsupported(String),
}

/// A triangulation given by face gluings.
///
/// Face `f` of tetrahedron `t` glued with `Gluing { tet, perm }` means vertex
/// `i` of `t` is identified with vertex `perm(i)` of `tet`, so face `f` meets
/// face `perm(f)`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    kind: Kind,
    gluings: Vec<[Option<Gluing>; 4]>,
    edges: Vec<EdgeClass>,
    edge_of: Vec<[usize; 6]>,
    vertices: Vec<VertexClass>,
    vertex_of: Vec<[usize; 4]>,
}

impl Triangulation {
    /// Validates involutivity and builds the skeleton. For `Kind::Ideal`
    /// every face must be glued.
    pub fn new(kind: Kind, gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self, TriError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriError::Unsupported("triangulation has no tetrahedra".into()));
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else {
                    if kind == Kind::Ideal {
                        return Err(TriError::Gluing {
                            tet: t,
                            face: f,
                            msg: "unglued face in an ideal triangulation".into(),
                        });
                    }
                    continue;
                };
                let err = |msg: String| TriError::Gluing { tet: t, face: f, msg };
                if g.tet >= n {
                    return Err(err(format!("target tetrahedron {} out of range", g.tet)));
                }
                let ff = g.perm.apply(f);
                if g.tet == t && ff == f {
                    return Err(err("face glued to itself".into()));
                }
                match gluings[g.tet][ff] {
                    Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                    Some(back) => {
                        return Err(err(format!(
                            "partner face {}:{} is glued to {}:{} with {}",
                            g.tet,
                            ff,
                            back.tet,
                            back.perm.apply(ff),
                            back.perm
                        )))
                    }
                    None => return Err(err(format!("partner face {}:{} is unglued", g.tet, ff))),
                }
            }
        }
        let mut tri = Triangulation {
            kind,
            gluings,
            edges: Vec::new(),
            edge_of: Vec::new(),
            vertices: Vec::new(),
            vertex_of: Vec::new(),
        };
        skeleton::build(&mut tri);
        Ok(tri)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn is_closed_up(&self) -> bool {
        self.gluings.iter().flatten().all(Option::is_some)
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    /// Edge class of edge `e` (see [`EDGE_VERTICES`]) of tetrahedron `tet`.
    pub fn edge_class(&self, tet: usize, e: usize) -> usize {
        self.edge_of[tet][e]
    }

    pub fn vertices(&self) -> &[VertexClass] {
        &self.vertices
    }

    pub fn vertex_class(&self, tet: usize, v: usize) -> usize {
        self.vertex_of[tet][v]
    }

    /// Face pairs `(tet, face, gluing)` listed once each, from the side with
    /// the smaller `(tet, face)`.
    pub fn face_pairs(&self) -> Vec<(usize, usize, Gluing)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if let Some(g) = g {
                    if (t, f) < (g.tet, g.perm.apply(f)) {
                        out.push((t, f, *g));
                    }
                }
            }
        }
        out
    }

    /// Parses the plain gluing format, or an isomorphism signature when the
    /// text contains no whitespace.
    pub fn load(text: &str) -> Result<Self, TriError> {
        let trimmed = text.trim();
        if !trimmed.is_empty() && !trimmed.contains(char::is_whitespace) {
            decode_isosig(trimmed)
        } else {
            parse_gluing_file(text)
        }
    }

    pub fn to_gluing_file(&self) -> String {
        let kind = match self.kind {
            Kind::Ideal => "ideal",
            Kind::Finite => "finite",
        };
        let mut out = format!("tets {} kind={kind}\n", self.size());
        for faces in &self.gluings {
            let cells: Vec<String> = faces
                .iter()
                .map(|g| match g {
                    Some(g) => format!("{}:{}", g.tet, g.perm),
                    None => "-".into(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

/// Parses `tets N kind=ideal|finite` followed by one line of four face
/// entries per tetrahedron.
pub fn parse_gluing_file(text: &str) -> Result<Triangulation, TriError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(TriError::Parse {
        line: 1,
        msg: "empty gluing file".into(),
    })?;
    let perr = |line: usize, msg: String| TriError::Parse { line, msg };
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 3 || words[0] != "tets" {
        return Err(perr(hline, "expected `tets N kind=ideal|finite`".into()));
    }
    let n: usize = words[1]
        .parse()
        .map_err(|_| perr(hline, format!("bad tetrahedron count `{}`", words[1])))?;
    let kind = match words[2] {
        "kind=ideal" => Kind::Ideal,
        "kind=finite" => Kind::Finite,
        other => return Err(perr(hline, format!("unknown kind `{other}`"))),
    };
    let mut gluings = Vec::with_capacity(n);
    for (line, body) in lines {
        if gluings.len() == n {
            return Err(perr(line, format!("more than {n} tetrahedra of data")));
        }
        let cells: Vec<&str> = body.split_whitespace().collect();
        if cells.len() != 4 {
            return Err(perr(
                line,
                format!("expected 4 face entries, found {}", cells.len()),
            ));
        }
        let mut faces = [None; 4];
        for (f, cell) in cells.iter().enumerate() {
            if *cell == "-" {
                continue;
            }
            let (t, p) = cell
                .split_once(':')
                .ok_or_else(|| perr(line, format!("bad face entry `{cell}`")))?;
            let tet: usize = t
                .parse()
                .map_err(|_| perr(line, format!("bad tetrahedron index `{t}`")))?;
            if tet >= n {
                return Err(perr(line, format!("tetrahedron index {tet} out of range")));
            }
            let perm: Perm4 = p.parse().map_err(|m| perr(line, m))?;
            faces[f] = Some(Gluing { tet, perm });
        }
        gluings.push(faces);
    }
    if gluings.len() != n {
        return Err(perr(
            hline,
            format!("header declares {n} tetrahedra but {} given", gluings.len()),
        ));
    }
    Triangulation::new(kind, gluings)
}
