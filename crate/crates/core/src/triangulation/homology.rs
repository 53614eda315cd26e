use super::{TriError, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCheck {
    /// dim H₁(M; F₂)
    pub h1_manifold: usize,
    /// dim H₁(∂M; F₂), summed over the vertex links
    pub h1_boundary: usize,
    /// `h1_manifold * 2 == h1_boundary`
    pub passes: bool,
}

/// Rank over F₂ of rows given as bitsets.
fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len) * 64;
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Mod-2 homology of the manifold from the cell structure dual to the
/// triangulation (tetrahedra, face pairs, edge classes), which is a spine of
/// the truncated-tetrahedra manifold.
pub fn homology_f2_check(tri: &Triangulation) -> Result<HomologyCheck, TriError> {
    if !tri.is_closed_up() {
        return Err(TriError::Unsupported(
            "homology check needs every face glued".into(),
        ));
    }
    let n = tri.size();
    let faces = tri.face_pairs();
    let mut face_index = vec![[usize::MAX; 4]; n];
    for (i, (t, f, g)) in faces.iter().enumerate() {
        face_index[*t][*f] = i;
        face_index[g.tet][g.perm.apply(*f)] = i;
    }
    let words = |len: usize| len.div_ceil(64).max(1);

    // ∂₁: face pair -> its two tetrahedra
    let d1: Vec<Vec<u64>> = faces
        .iter()
        .map(|(t, _, g)| {
            let mut row = vec![0u64; words(n)];
            row[t / 64] ^= 1 << (t % 64);
            row[g.tet / 64] ^= 1 << (g.tet % 64);
            row
        })
        .collect();
    // ∂₂: edge class -> face pairs crossed walking around it
    let d2: Vec<Vec<u64>> = tri
        .edges()
        .iter()
        .map(|e| {
            let mut row = vec![0u64; words(faces.len())];
            for emb in &e.embeddings {
                let i = face_index[emb.tet][emb.perm.apply(3)];
                row[i / 64] ^= 1 << (i % 64);
            }
            row
        })
        .collect();
    let r1 = rank_f2(d1);
    let r2 = rank_f2(d2);
    let h1_manifold = faces.len() - r1 - r2;
    let h1_boundary: usize = tri
        .vertices()
        .iter()
        .map(|v| (2 - v.link_euler_char).max(0) as usize)
        .sum();
    Ok(HomologyCheck {
        h1_manifold,
        h1_boundary,
        passes: 2 * h1_manifold == h1_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{decode_isosig, parse_gluing_file};

    #[test]
    fn figure_eight() {
        let t = parse_gluing_file(crate::triangulation::tests::FIGURE_EIGHT).unwrap();
        let h = homology_f2_check(&t).unwrap();
        assert_eq!((h.h1_manifold, h.h1_boundary, h.passes), (1, 2, true));
    }

    #[test]
    fn knot_exteriors_pass() {
        for sig in [
            "nvLAAvAPQkcdfgfhkmjlmklmwcadtfaaoaedrg",
            "nvLALAwAQkedffgiijkmlmlmfvaeetcaangcbn",
            "kLLLzPQkccfegjihijjlnahwdavhqk",
        ] {
            let h = homology_f2_check(&decode_isosig(sig).unwrap()).unwrap();
            assert_eq!(h.h1_manifold, 1, "{sig}");
            assert!(h.passes);
        }
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank_f2(vec![vec![0b011], vec![0b110], vec![0b101]]), 2);
        assert_eq!(rank_f2(vec![]), 0);
    }
}
