//! Explicit cell structure of a normal surface: one cell per disk copy,
//! arcs matched across faces in the nested order of parallel disks.

use super::{is_admissible, CoordSystem, NormalError, NormalVector};
use crate::triangulation::{edge_number, quad_type_for_pair, Triangulation};

pub const DEFAULT_DISK_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexComponent {
    pub vector: NormalVector,
    pub orientable: bool,
    /// V − E + F of the component's cells.
    pub euler_char: i64,
    /// Points where the component meets the 1-skeleton.
    pub edge_points: u64,
    pub disks: u64,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    components: Vec<ComplexComponent>,
}

struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // path compression, accumulating parity from the top down
        let mut acc = 0u8;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = r;
        }
        (r, if path.is_empty() { 0 } else { self.parity[x] })
    }

    /// Records `sign(a) * sign(b) = (-1)^p`; returns false on contradiction.
    fn union(&mut self, a: usize, b: usize, p: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == p;
        }
        let (lo, hi, plo, phi) = if ra < rb {
            (ra, rb, pa, pb)
        } else {
            (rb, ra, pb, pa)
        };
        self.parent[hi] = lo;
        self.parity[hi] = plo ^ phi ^ p;
        true
    }
}

/// Disk types within a tetrahedron: 0..4 triangles, 4..7 quads.
struct Layout {
    base: Vec<[usize; 7]>,
    counts: Vec<[i64; 7]>,
    total: usize,
}

impl Layout {
    fn disk(&self, t: usize, ty: usize, copy: i64) -> usize {
        self.base[t][ty] + copy as usize
    }

    /// Disk owning the `p`-th arc (counted from the corner) at corner `v` of
    /// face `f` in tetrahedron `t`, with its type.
    fn arc_disk(&self, t: usize, f: usize, v: usize, p: i64) -> (usize, usize) {
        let tv = self.counts[t][v];
        if p < tv {
            return (self.disk(t, v, p), v);
        }
        let k = quad_type_for_pair(v, f);
        let q = self.counts[t][4 + k];
        let j = p - tv;
        let copy = if quad_near_zero(k, v) { j } else { q - 1 - j };
        (self.disk(t, 4 + k, copy), 4 + k)
    }
}

/// Whether vertex `v` lies on the `{0, k+1}` side of quad type `k`.
fn quad_near_zero(k: usize, v: usize) -> bool {
    v == 0 || v == k + 1
}

/// Reference boundary cycle of a disk type, as tetrahedron edge numbers.
fn boundary_cycle(ty: usize) -> Vec<usize> {
    if ty < 4 {
        let others: Vec<usize> = (0..4).filter(|&x| x != ty).collect();
        others.iter().map(|&x| edge_number(ty, x)).collect()
    } else {
        let k = ty - 4;
        let (x, y) = (0, k + 1);
        let rest: Vec<usize> = (1..4).filter(|&z| z != y).collect();
        let (z, w) = (rest[0], rest[1]);
        vec![
            edge_number(x, z),
            edge_number(x, w),
            edge_number(y, w),
            edge_number(y, z),
        ]
    }
}

/// +1 if the reference cycle of `ty` runs from edge `e1` straight to `e2`.
fn direction(cycles: &[Vec<usize>], ty: usize, e1: usize, e2: usize) -> i8 {
    let c = &cycles[ty];
    let i = c.iter().position(|&e| e == e1).expect("edge on disk");
    if c[(i + 1) % c.len()] == e2 {
        1
    } else {
        -1
    }
}

impl SurfaceComplex {
    pub fn build(tri: &Triangulation, v: &NormalVector, cap: u64) -> Result<Self, NormalError> {
        v.expect(CoordSystem::Standard, tri)?;
        if !is_admissible(v) {
            let tet = (0..v.tets())
                .find(|&t| (0..3).filter(|&k| v.quad(t, k) != 0).count() > 1)
                .unwrap();
            return Err(NormalError::Incompatible { tet });
        }
        let required: u64 = v.entries().iter().map(|&x| x as u64).sum();
        if required > cap {
            return Err(NormalError::CapExceeded { required, cap });
        }
        let n = tri.size();
        let mut base = Vec::with_capacity(n);
        let mut counts = Vec::with_capacity(n);
        let mut total = 0usize;
        for t in 0..n {
            let c: [i64; 7] = std::array::from_fn(|i| v.entries()[7 * t + i]);
            let mut b = [0usize; 7];
            for i in 0..7 {
                b[i] = total;
                total += c[i] as usize;
            }
            base.push(b);
            counts.push(c);
        }
        let lay = Layout { base, counts, total };
        let cycles: Vec<Vec<usize>> = (0..7).map(boundary_cycle).collect();
        let mut uf = ParityUf::new(lay.total);
        let mut conflicts = Vec::new();
        let mut arcs_at = vec![0u64; lay.total];

        for t in 0..n {
            for f in 0..4 {
                let g = tri.gluing(t, f);
                if let Some(g) = g {
                    if (t, f) > (g.tet, g.perm.apply(f)) {
                        continue;
                    }
                }
                for vtx in (0..4).filter(|&x| x != f) {
                    let c = lay.counts[t][vtx] + lay.counts[t][4 + quad_type_for_pair(vtx, f)];
                    let Some(g) = g else {
                        // boundary arcs: one edge each, owned by a single disk
                        for p in 0..c {
                            arcs_at[lay.arc_disk(t, f, vtx, p).0] += 2;
                        }
                        continue;
                    };
                    let (gt, gf, gv) = (g.tet, g.perm.apply(f), g.perm.apply(vtx));
                    let c2 = lay.counts[gt][gv] + lay.counts[gt][4 + quad_type_for_pair(gv, gf)];
                    if c != c2 {
                        return Err(NormalError::NotASolution);
                    }
                    let mut ends = (0..4).filter(|&x| x != f && x != vtx);
                    let (a, b) = (ends.next().unwrap(), ends.next().unwrap());
                    let (ea, eb) = (edge_number(vtx, a), edge_number(vtx, b));
                    let (ga, gb) = (g.perm.apply(a), g.perm.apply(b));
                    let (gea, geb) = (edge_number(gv, ga), edge_number(gv, gb));
                    for p in 0..c {
                        let (da, ta) = lay.arc_disk(t, f, vtx, p);
                        let (db, tb) = lay.arc_disk(gt, gf, gv, p);
                        let dir = direction(&cycles, ta, ea, eb) * direction(&cycles, tb, gea, geb);
                        // coherent orientations cross a shared arc in
                        // opposite directions
                        let parity = u8::from(dir == 1);
                        if !uf.union(da, db, parity) {
                            conflicts.push(da);
                        }
                        arcs_at[da] += 1;
                        arcs_at[db] += 1;
                    }
                }
            }
        }

        // roots → component index, ordered by smallest disk
        let mut comp_of_root = vec![usize::MAX; lay.total];
        let mut comps: Vec<ComplexComponent> = Vec::new();
        let mut twice_edges: Vec<u64> = Vec::new();
        let mut disk_comp = vec![0usize; lay.total];
        for t in 0..n {
            for ty in 0..7 {
                for copy in 0..lay.counts[t][ty] {
                    let d = lay.disk(t, ty, copy);
                    let (r, _) = uf.find(d);
                    if comp_of_root[r] == usize::MAX {
                        comp_of_root[r] = comps.len();
                        comps.push(ComplexComponent {
                            vector: NormalVector::zero(CoordSystem::Standard, n),
                            orientable: true,
                            euler_char: 0,
                            edge_points: 0,
                            disks: 0,
                        });
                        twice_edges.push(0);
                    }
                    let ci = comp_of_root[r];
                    disk_comp[d] = ci;
                    comps[ci].vector.entries[7 * t + ty] += 1;
                    comps[ci].disks += 1;
                    twice_edges[ci] += arcs_at[d];
                }
            }
        }
        for d in conflicts {
            let (r, _) = uf.find(d);
            comps[comp_of_root[r]].orientable = false;
        }
        for edge in tri.edges() {
            let emb = edge.embeddings[0];
            let (t, a, b) = (emb.tet, emb.perm.apply(0), emb.perm.apply(1));
            let k = (0..3).find(|&k| quad_type_for_pair(a, b) != k && lay.counts[t][4 + k] > 0);
            let mut owners: Vec<usize> = Vec::new();
            for c in 0..lay.counts[t][a] {
                owners.push(lay.disk(t, a, c));
            }
            if let Some(k) = k {
                let q = lay.counts[t][4 + k];
                for j in 0..q {
                    let copy = if quad_near_zero(k, a) { j } else { q - 1 - j };
                    owners.push(lay.disk(t, 4 + k, copy));
                }
            }
            for c in (0..lay.counts[t][b]).rev() {
                owners.push(lay.disk(t, b, c));
            }
            for d in owners {
                comps[disk_comp[d]].edge_points += 1;
            }
        }
        for (c, te) in comps.iter_mut().zip(&twice_edges) {
            c.euler_char = c.edge_points as i64 - (*te / 2) as i64 + c.disks as i64;
        }
        Ok(SurfaceComplex { components: comps })
    }

    pub fn components(&self) -> &[ComplexComponent] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn euler_char(&self) -> i64 {
        self.components.iter().map(|c| c.euler_char).sum()
    }
}

#[cfg(test)]
pub(super) mod tests_support {
    pub fn cycle(ty: usize) -> Vec<usize> {
        super::boundary_cycle(ty)
    }
}
