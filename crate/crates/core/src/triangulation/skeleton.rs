use super::{edge_number, Perm4, Triangulation, EDGE_VERTICES};

/// One appearance of an edge class inside a tetrahedron: the edge runs from
/// vertex `perm(0)` to `perm(1)`; walking around the edge leaves through face
/// `perm(3)` and arrives through face `perm(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub perm: Perm4,
}

impl EdgeEmbedding {
    pub fn edge(&self) -> usize {
        edge_number(self.perm.apply(0), self.perm.apply(1))
    }
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub id: usize,
    /// Cyclic (or, on the boundary, linear) sequence of incidences.
    pub embeddings: Vec<EdgeEmbedding>,
    pub boundary: bool,
}

impl EdgeClass {
    pub fn valence(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    pub id: usize,
    /// `(tet, vertex)` corners in this class, sorted.
    pub corners: Vec<(usize, usize)>,
    /// Euler characteristic of the vertex link.
    pub link_euler_char: i64,
    pub link_closed: bool,
}

impl VertexClass {
    /// True for a closed link that is not a sphere.
    pub fn is_ideal(&self) -> bool {
        self.link_closed && self.link_euler_char != 2
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // smaller index becomes the root so classes are numbered by their
        // smallest representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Assigns class ids in order of first appearance of the smallest member.
fn label(parent: &mut [usize]) -> (Vec<usize>, usize) {
    let n = parent.len();
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for x in 0..n {
        let r = find(parent, x);
        if ids[r] == usize::MAX {
            ids[r] = next;
            next += 1;
        }
        out[x] = ids[r];
    }
    (out, next)
}

fn embedding_perm(a: usize, b: usize) -> Perm4 {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    let c = rest.next().unwrap();
    let d = rest.next().unwrap();
    Perm4::new([a as u8, b as u8, c as u8, d as u8]).unwrap()
}

pub(super) fn build(tri: &mut Triangulation) {
    let n = tri.size();

    let mut parent: Vec<usize> = (0..6 * n).collect();
    let mut vparent: Vec<usize> = (0..4 * n).collect();
    for (t, f, g) in tri.face_pairs() {
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            if *a == f || *b == f {
                continue;
            }
            let e2 = edge_number(g.perm.apply(*a), g.perm.apply(*b));
            union(&mut parent, 6 * t + e, 6 * g.tet + e2);
        }
        for v in (0..4).filter(|&v| v != f) {
            union(&mut vparent, 4 * t + v, 4 * g.tet + g.perm.apply(v));
        }
    }
    let (eid, ne) = label(&mut parent);
    let (vid, nv) = label(&mut vparent);
    tri.edge_of = (0..n).map(|t| std::array::from_fn(|e| eid[6 * t + e])).collect();
    tri.vertex_of = (0..n).map(|t| std::array::from_fn(|v| vid[4 * t + v])).collect();

    let mut edges: Vec<Option<super::EdgeClass>> = vec![None; ne];
    for t in 0..n {
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            let id = eid[6 * t + e];
            if edges[id].is_some() {
                continue;
            }
            let start = EdgeEmbedding {
                tet: t,
                perm: embedding_perm(*a, *b),
            };
            edges[id] = Some(walk_edge(tri, id, start));
        }
    }
    tri.edges = edges.into_iter().map(Option::unwrap).collect();

    let mut vertices: Vec<VertexClass> = (0..nv)
        .map(|id| VertexClass {
            id,
            corners: Vec::new(),
            link_euler_char: 0,
            link_closed: true,
        })
        .collect();
    for t in 0..n {
        for v in 0..4 {
            vertices[vid[4 * t + v]].corners.push((t, v));
        }
    }
    // link: F = corners, E = arcs (face corners, glued pairs counted once),
    // V = edge ends
    let mut twice_e = vec![0i64; nv];
    for t in 0..n {
        for f in 0..4 {
            let glued = tri.gluing(t, f).is_some();
            for v in (0..4).filter(|&v| v != f) {
                let c = vid[4 * t + v];
                twice_e[c] += if glued { 1 } else { 2 };
                if !glued {
                    vertices[c].link_closed = false;
                }
            }
        }
    }
    let mut vcount = vec![0i64; nv];
    for edge in &tri.edges {
        let emb = edge.embeddings[0];
        vcount[vid[4 * emb.tet + emb.perm.apply(0)]] += 1;
        vcount[vid[4 * emb.tet + emb.perm.apply(1)]] += 1;
    }
    for (c, vc) in vertices.iter_mut().enumerate() {
        vc.link_euler_char = vcount[c] - twice_e[c] / 2 + vc.corners.len() as i64;
    }
    tri.vertices = vertices;
}

fn step(tri: &Triangulation, emb: EdgeEmbedding) -> Option<EdgeEmbedding> {
    let p = emb.perm.images().map(usize::from);
    let g = tri.gluing(emb.tet, p[3])?;
    let q = [
        g.perm.apply(p[0]),
        g.perm.apply(p[1]),
        g.perm.apply(p[3]),
        g.perm.apply(p[2]),
    ];
    Some(EdgeEmbedding {
        tet: g.tet,
        perm: Perm4::new(q.map(|x| x as u8)).unwrap(),
    })
}

fn reverse(emb: EdgeEmbedding) -> EdgeEmbedding {
    let p = emb.perm.images();
    EdgeEmbedding {
        tet: emb.tet,
        perm: Perm4::new([p[0], p[1], p[3], p[2]]).unwrap(),
    }
}

fn walk_edge(tri: &Triangulation, id: usize, start: EdgeEmbedding) -> EdgeClass {
    let mut forward = vec![start];
    let mut cur = start;
    loop {
        match step(tri, cur) {
            Some(next) if next == start => {
                return EdgeClass {
                    id,
                    embeddings: forward,
                    boundary: false,
                }
            }
            Some(next) => {
                forward.push(next);
                cur = next;
            }
            None => break,
        }
    }
    // boundary edge: walk backwards from the start to the other end
    let mut backward = Vec::new();
    let mut cur = reverse(start);
    while let Some(next) = step(tri, cur) {
        backward.push(reverse(next));
        cur = next;
    }
    backward.reverse();
    backward.extend(forward);
    EdgeClass {
        id,
        embeddings: backward,
        boundary: true,
    }
}
