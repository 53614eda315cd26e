use std::fmt;
use std::str::FromStr;

/// A permutation of `{0,1,2,3}`, stored as its image sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(other.0.map(|i| self.0[i as usize]))
    }

    pub fn pre_image(&self, i: usize) -> usize {
        self.0.iter().position(|&p| p as usize == i).unwrap()
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Position in the lexicographic ordering of all 24 image sequences.
    pub fn lex_index(&self) -> usize {
        let mut idx = 0;
        for i in 0..4 {
            let smaller = (i + 1..4).filter(|&j| self.0[j] < self.0[i]).count();
            idx = idx * (4 - i) + smaller;
        }
        idx
    }

    pub fn from_lex_index(mut idx: usize) -> Option<Perm4> {
        if idx >= 24 {
            return None;
        }
        let mut digits = [0usize; 4];
        for i in (0..4).rev() {
            let base = 4 - i;
            digits[i] = idx % base;
            idx /= base;
        }
        let mut avail: Vec<u8> = vec![0, 1, 2, 3];
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = avail.remove(digits[i]);
        }
        Some(Perm4(out))
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24).map(|i| Perm4::from_lex_index(i).unwrap())
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

impl FromStr for Perm4 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| format!("bad permutation `{s}`"))?;
        if digits.len() != 4 {
            return Err(format!("permutation `{s}` must have 4 digits"));
        }
        Perm4::new([digits[0], digits[1], digits[2], digits[3]])
            .ok_or_else(|| format!("`{s}` is not a permutation of 0123"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_index_round_trip() {
        let all: Vec<Perm4> = Perm4::all().collect();
        assert_eq!(all[0], Perm4::IDENTITY);
        assert_eq!(all[1].to_string(), "0132");
        assert_eq!(all[2].to_string(), "0213");
        assert_eq!(all[23].to_string(), "3210");
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.lex_index(), i);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn group_laws() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                let pq = p.compose(&q);
                for i in 0..4 {
                    assert_eq!(pq.apply(i), p.apply(q.apply(i)));
                }
                assert_eq!(pq.is_even(), p.is_even() == q.is_even());
            }
        }
    }

    #[test]
    fn parse() {
        assert_eq!("1032".parse::<Perm4>().unwrap().apply(0), 1);
        assert!("1123".parse::<Perm4>().is_err());
        assert!("012".parse::<Perm4>().is_err());
    }
}
