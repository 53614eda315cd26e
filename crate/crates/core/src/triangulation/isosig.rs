//! Regina-style isomorphism signatures for 3-dimensional triangulations.

use super::{Gluing, Kind, Perm4, TriError, Triangulation};

const ALPHABET: &[u8; 64] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

fn sval(c: u8) -> Result<usize, TriError> {
    ALPHABET
        .iter()
        .position(|&a| a == c)
        .ok_or_else(|| TriError::IsoSig(format!("invalid character `{}`", c as char)))
}

fn schar(v: usize) -> char {
    ALPHABET[v] as char
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self) -> Result<usize, TriError> {
        let c = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| TriError::IsoSig("truncated signature".into()))?;
        self.pos += 1;
        sval(c)
    }

    fn int(&mut self, nchars: usize) -> Result<usize, TriError> {
        let mut v = 0usize;
        for i in 0..nchars {
            v |= self.next()? << (6 * i);
        }
        Ok(v)
    }

    fn done(&self) -> bool {
        self.pos >= self.bytes.len()
    }
}

/// Decodes a signature; a framing suffix after `_` is ignored. Several
/// concatenated components are accepted.
///
/// The result is `Kind::Ideal` when every face is glued and some vertex link
/// is not a sphere, otherwise `Kind::Finite`.
pub fn decode_isosig(sig: &str) -> Result<Triangulation, TriError> {
    let body = sig.split('_').next().unwrap_or("");
    if body.is_empty() {
        return Err(TriError::IsoSig("empty signature".into()));
    }
    let mut r = Reader {
        bytes: body.as_bytes(),
        pos: 0,
    };
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    while !r.done() {
        decode_component(&mut r, &mut gluings)?;
    }
    let closed = gluings.iter().flatten().all(Option::is_some);
    let tri = Triangulation::new(Kind::Finite, gluings)
        .map_err(|e| TriError::IsoSig(format!("inconsistent gluing data: {e}")))?;
    if closed && tri.vertices().iter().any(|v| v.is_ideal()) {
        Triangulation::new(Kind::Ideal, tri.gluings.clone())
    } else {
        Ok(tri)
    }
}

fn decode_component(r: &mut Reader, gluings: &mut Vec<[Option<Gluing>; 4]>) -> Result<(), TriError> {
    let bad = |m: &str| TriError::IsoSig(m.into());
    let mut n = r.next()?;
    let mut nchars = 1;
    if n == 63 {
        nchars = r.next()?;
        if nchars == 0 {
            return Err(bad("bad size width"));
        }
        n = r.int(nchars)?;
    }
    if n == 0 {
        return Ok(());
    }
    let total = 4 * n;
    let mut actions = Vec::with_capacity(total + 2);
    let mut facets = 0;
    let mut joins = 0;
    while facets < total {
        let c = r.next()?;
        for k in 0..3 {
            let a = (c >> (2 * k)) & 3;
            if facets == total {
                if a != 0 {
                    return Err(bad("nonzero padding in facet actions"));
                }
                continue;
            }
            match a {
                0 => facets += 1,
                1 => facets += 2,
                2 => {
                    facets += 2;
                    joins += 1;
                }
                _ => return Err(bad("invalid facet action")),
            }
            if facets > total {
                return Err(bad("facet actions overrun"));
            }
            actions.push(a);
        }
    }
    let dests = (0..joins).map(|_| r.int(nchars)).collect::<Result<Vec<_>, _>>()?;
    let perms = (0..joins)
        .map(|_| {
            let i = r.next()?;
            Perm4::from_lex_index(i).ok_or_else(|| bad("permutation index out of range"))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let base = gluings.len();
    gluings.extend(std::iter::repeat_n([None; 4], n));
    let mut action = actions.into_iter();
    let mut next_unused = 1;
    let mut join = 0;
    for pos in 0..n {
        for j in 0..4 {
            if gluings[base + pos][j].is_some() {
                continue;
            }
            match action.next().ok_or_else(|| bad("too few facet actions"))? {
                0 => {}
                1 => {
                    if next_unused >= n {
                        return Err(bad("too many new tetrahedra"));
                    }
                    glue(gluings, base + pos, j, base + next_unused, Perm4::IDENTITY);
                    next_unused += 1;
                }
                _ => {
                    let dest = dests[join];
                    let g = perms[join];
                    join += 1;
                    if dest >= next_unused
                        || gluings[base + dest][g.apply(j)].is_some()
                        || (dest == pos && g.apply(j) == j)
                    {
                        return Err(bad("invalid join"));
                    }
                    glue(gluings, base + pos, j, base + dest, g);
                }
            }
        }
    }
    Ok(())
}

fn glue(gluings: &mut [[Option<Gluing>; 4]], t: usize, f: usize, dest: usize, perm: Perm4) {
    gluings[t][f] = Some(Gluing { tet: dest, perm });
    gluings[dest][perm.apply(f)] = Some(Gluing {
        tet: t,
        perm: perm.inverse(),
    });
}

fn push_int(out: &mut String, mut v: usize, nchars: usize) {
    for _ in 0..nchars {
        out.push(schar(v & 63));
        v >>= 6;
    }
}

fn sig_from(tri: &Triangulation, tets: &[usize], start: usize, vertices: Perm4) -> String {
    let n = tets.len();
    let total = tri.size();
    let mut image = vec![usize::MAX; total];
    let mut pre_image = vec![0usize; n];
    let mut vmap = vec![Perm4::IDENTITY; total];
    image[start] = 0;
    vmap[start] = vertices.inverse();
    pre_image[0] = start;
    let mut actions = Vec::with_capacity(4 * n);
    let mut dests = Vec::new();
    let mut perms = Vec::new();
    let mut next_unused = 1;
    for simp_img in 0..n {
        let src = pre_image[simp_img];
        for facet_img in 0..4 {
            let facet_src = vmap[src].pre_image(facet_img);
            let Some(g) = tri.gluing(src, facet_src) else {
                actions.push(0);
                continue;
            };
            let dest = g.tet;
            if image[dest] != usize::MAX {
                let dest_facet_img = vmap[dest].apply(g.perm.apply(facet_src));
                if image[dest] < simp_img || (image[dest] == simp_img && dest_facet_img < facet_img) {
                    continue;
                }
            }
            if image[dest] == usize::MAX {
                image[dest] = next_unused;
                pre_image[next_unused] = dest;
                next_unused += 1;
                vmap[dest] = vmap[src].compose(&g.perm.inverse());
                actions.push(1);
                continue;
            }
            dests.push(image[dest]);
            perms.push(
                vmap[dest]
                    .compose(&g.perm)
                    .compose(&vmap[src].inverse())
                    .lex_index(),
            );
            actions.push(2);
        }
    }
    let mut out = String::new();
    let nchars = if n < 63 {
        out.push(schar(n));
        1
    } else {
        let mut nchars = 0;
        let mut tmp = n;
        while tmp > 0 {
            tmp >>= 6;
            nchars += 1;
        }
        out.push(schar(63));
        out.push(schar(nchars));
        push_int(&mut out, n, nchars);
        nchars
    };
    for chunk in actions.chunks(3) {
        let v = chunk
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &a)| acc | (a << (2 * k)));
        out.push(schar(v));
    }
    for d in dests {
        push_int(&mut out, d, nchars);
    }
    for p in perms {
        out.push(schar(p));
    }
    out
}

/// Canonical signature: the lexicographically smallest encoding over all
/// starting tetrahedra and vertex labellings, per connected component.
/// Components are concatenated in sorted order.
pub fn encode_isosig(tri: &Triangulation) -> String {
    let n = tri.size();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let t = members[i];
            i += 1;
            for g in tri.gluings()[t].iter().flatten() {
                if comp[g.tet] == usize::MAX {
                    comp[g.tet] = id;
                    members.push(g.tet);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut sigs: Vec<String> = comps
        .iter()
        .map(|members| {
            let mut best: Option<String> = None;
            for &s in members {
                for p in Perm4::all() {
                    let cand = sig_from(tri, members, s, p);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            best.unwrap()
        })
        .collect();
    sigs.sort();
    sigs.concat()
}
