use std::fmt;

use crate::error::{Error, Result};

pub const MAX_N: usize = 8;

/// A permutation of `{0, .., n-1}` in one-line notation (`img[i]` is the image of `i`).
///
/// Composition `a * b` applies `b` first, so `x y x^-1` reads as functions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            img: (0..n as u8).collect(),
        }
    }

    pub fn from_images(img: Vec<u8>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &i in &img {
            if i as usize >= n || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::InvalidArgument(format!("{img:?} is not a bijection")));
            }
        }
        Ok(Permutation { img })
    }

    /// Builds from disjoint cycles written with 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Result<Self> {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(Error::InvalidArgument(format!("point out of range in {cycle:?}")));
                }
                img[a as usize] = b;
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            img: other.img.iter().map(|&i| self.img[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { img: inv }
    }

    pub fn pow(&self, e: u64) -> Permutation {
        // reduce by the order first; e can be a large prime power
        let e = e % self.order();
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `g self g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut img = vec![0u8; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            img[g.img[i] as usize] = g.img[j as usize];
        }
        Permutation { img }
    }

    /// Disjoint cycles including fixed points, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u8);
                i = self.img[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths sorted in decreasing order (a partition of `n`).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for i in c {
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All permutations of `{0..n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Permutation { img: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Every element of the centralizer of `y`, generated from its cycle structure:
/// permute cycles of equal length among themselves and rotate each one.
pub fn centralizer(y: &Permutation) -> Vec<Permutation> {
    let n = y.degree();
    let cycles = y.cycles();
    // choose, for each cycle, a target cycle of the same length and a rotation
    let mut out = Vec::new();
    let mut used = vec![false; cycles.len()];
    let mut img = vec![0u8; n];
    fn rec(
        k: usize,
        cycles: &[Vec<u8>],
        used: &mut [bool],
        img: &mut [u8],
        out: &mut Vec<Permutation>,
    ) {
        if k == cycles.len() {
            out.push(Permutation { img: img.to_vec() });
            return;
        }
        let src = &cycles[k];
        let len = src.len();
        for t in 0..cycles.len() {
            if used[t] || cycles[t].len() != len {
                continue;
            }
            used[t] = true;
            for rot in 0..len {
                for (i, &a) in src.iter().enumerate() {
                    img[a as usize] = cycles[t][(i + rot) % len];
                }
                rec(k + 1, cycles, used, img, out);
            }
            used[t] = false;
        }
    }
    rec(0, &cycles, &mut used, &mut img, &mut out);
    out
}

/// One `x` with `x y x^-1 = z`, provided `y` and `z` have the same cycle type.
pub fn conjugator(y: &Permutation, z: &Permutation) -> Option<Permutation> {
    let n = y.degree();
    let mut yc = y.cycles();
    let mut zc = z.cycles();
    yc.sort_by_key(|c| c.len());
    zc.sort_by_key(|c| c.len());
    if yc.iter().map(Vec::len).ne(zc.iter().map(Vec::len)) {
        return None;
    }
    let mut img = vec![0u8; n];
    for (a, b) in yc.iter().zip(&zc) {
        for (&i, &j) in a.iter().zip(b) {
            img[i as usize] = j;
        }
    }
    Some(Permutation { img })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_roundtrip() {
        let p = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(p.to_string(), "(12)(34)");
        assert_eq!(p.cycle_type(), vec![2, 2]);
        assert_eq!(p.order(), 2);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn composition_and_conjugation() {
        let x = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let y = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let lhs = y.conjugate_by(&x);
        let rhs = x.compose(&y).compose(&x.inverse());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, y.pow(2));
        assert_eq!(y.pow(5), y.pow(2));
        assert!(y.pow(3).is_identity());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(6).len(), 720);
        let y = Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap();
        let c = centralizer(&y);
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|g| y.conjugate_by(g) == y));
    }

    #[test]
    fn conjugator_maps_cycles() {
        let y = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        let z = y.pow(7);
        let x = conjugator(&y, &z).unwrap();
        assert_eq!(y.conjugate_by(&x), z);
    }
}
