//! The BIT presentation of the Rado graph and its closed-form witnesses.
//!
//! Vertex ids are `u128`. Every id below 2^128 is a vertex; nothing above
//! exists in this model, so searches that would need larger ids report
//! exhaustion instead of wrapping.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u128;

/// Number of bit positions a vertex id can carry.
pub const BITS: u32 = 128;

/// `u ~ v` iff bit `min(u,v)` of `max(u,v)` is set.
#[inline]
pub fn adjacent(u: Vertex, v: Vertex) -> bool {
    if u == v {
        return false;
    }
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    lo < BITS as u128 && (hi >> lo) & 1 == 1
}

/// Neighbours of `z < 128` among `[0,128)` as a bit mask.
pub fn low_neighbours(z: u32) -> u128 {
    static TABLE: OnceLock<[u128; 128]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u128; 128];
        for (z, slot) in t.iter_mut().enumerate() {
            let mut m = 0u128;
            for u in 0..128u128 {
                if adjacent(z as u128, u) {
                    m |= 1 << u;
                }
            }
            *slot = m;
        }
        t
    })[z as usize]
}

/// Adjacency of `u` to every `z < 128`, as a mask over `z`.
#[inline]
pub fn adjacency_mask(u: Vertex) -> u128 {
    if u < 128 {
        low_neighbours(u as u32)
    } else {
        // z < 128 <= u: adjacent iff bit z of u
        u
    }
}

/// A pair of disjoint finite vertex sets, both kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DisjointPair {
    u: Vec<Vertex>,
    v: Vec<Vertex>,
}

impl DisjointPair {
    pub fn new(mut u: Vec<Vertex>, mut v: Vec<Vertex>) -> Result<Self> {
        u.sort_unstable();
        u.dedup();
        v.sort_unstable();
        v.dedup();
        if let Some(x) = u.iter().find(|x| v.binary_search(x).is_ok()) {
            return Err(Error::NotDisjoint(*x));
        }
        Ok(DisjointPair { u, v })
    }

    pub fn empty() -> Self {
        DisjointPair { u: Vec::new(), v: Vec::new() }
    }

    pub fn u(&self) -> &[Vertex] {
        &self.u
    }

    pub fn v(&self) -> &[Vertex] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.u.len() + self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, z: Vertex) -> bool {
        self.u.binary_search(&z).is_ok() || self.v.binary_search(&z).is_ok()
    }

    /// Does `z` witness the pair in the base graph?
    pub fn is_witness(&self, z: Vertex) -> bool {
        !self.contains(z)
            && self.u.iter().all(|&a| adjacent(z, a))
            && self.v.iter().all(|&b| !adjacent(z, b))
    }

    pub fn max(&self) -> Option<Vertex> {
        self.u.last().copied().max(self.v.last().copied())
    }
}

impl fmt::Display for DisjointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}};{{{}}}", join(&self.u), join(&self.v))
    }
}

pub(crate) fn join(xs: &[Vertex]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `Σ 2^u + 2^m` with `m = max(U∪V)+1`, or 1 for the empty pair.
pub fn witness_direct(p: &DisjointPair) -> Result<Vertex> {
    let m = match p.max() {
        Some(x) => x + 1,
        None => 0,
    };
    if m >= BITS as u128 {
        return Err(Error::ResourceExhausted(format!(
            "closed-form witness for ({p}) needs bit {m}"
        )));
    }
    let mut z: Vertex = 1 << m;
    for &u in p.u() {
        z |= 1 << u;
    }
    Ok(z)
}

/// Inverse of the triangular pairing: `n ↦ (r, m)` with `n = (r+m)(r+m+1)/2 + m`.
pub fn unpair(n: u128) -> (u128, u128) {
    let w = (isqrt(8 * n + 1) - 1) / 2;
    let t = w * (w + 1) / 2;
    let m = n - t;
    (w - m, m)
}

pub fn pair_index(r: u128, m: u128) -> u128 {
    let w = r + m;
    w * (w + 1) / 2 + m
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Decode `m` in base 3: digit 1 puts `i` in U, digit 2 puts it in V.
pub fn decode_pair(mut m: u128) -> DisjointPair {
    let (mut u, mut v) = (Vec::new(), Vec::new());
    let mut i = 0;
    while m > 0 {
        match m % 3 {
            1 => u.push(i),
            2 => v.push(i),
            _ => {}
        }
        m /= 3;
        i += 1;
    }
    DisjointPair { u, v }
}

pub fn encode_pair(p: &DisjointPair) -> u128 {
    let top = match p.max() {
        Some(x) => x,
        None => return 0,
    };
    let mut m = 0u128;
    for i in (0..=top).rev() {
        let d = if p.u.binary_search(&i).is_ok() {
            1
        } else if p.v.binary_search(&i).is_ok() {
            2
        } else {
            0
        };
        m = m * 3 + d;
    }
    m
}

/// Every disjoint pair is hit for each `r`, hence infinitely often.
pub fn enumerate_pair(n: u128) -> DisjointPair {
    decode_pair(unpair(n).1)
}

/// Least `z >= lo` with every `req` bit set and every `forb` bit clear.
pub fn next_matching(lo: u128, req: u128, forb: u128) -> Option<u128> {
    if req & forb != 0 {
        return None;
    }
    if lo & req == req && lo & forb == 0 {
        return Some(lo);
    }
    for i in 0..BITS {
        let bit = 1u128 << i;
        if lo & bit != 0 || forb & bit != 0 {
            continue;
        }
        let high = if i == 127 { 0 } else { !((bit << 1) - 1) };
        if lo & high & req != req & high || lo & high & forb != 0 {
            continue;
        }
        let low = bit - 1;
        return Some((lo & high) | bit | (req & low));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(0, 1));
        assert!(!adjacent(0, 2));
        assert!(adjacent(2, 6));
        assert!(adjacent(5, 0));
        assert!(!adjacent(7, 7));
    }

    #[test]
    fn symmetric_irreflexive() {
        for u in 0..256 {
            assert!(!adjacent(u, u));
            for v in 0..256 {
                assert_eq!(adjacent(u, v), adjacent(v, u));
            }
        }
    }

    #[test]
    fn low_table_matches() {
        for z in 0..128u32 {
            for u in 0..128u128 {
                assert_eq!((low_neighbours(z) >> u) & 1 == 1, adjacent(z as u128, u));
            }
        }
        let big = (1u128 << 100) | 5;
        for z in 0..128u128 {
            assert_eq!((adjacency_mask(big) >> z) & 1 == 1, adjacent(z, big));
        }
    }

    #[test]
    fn direct_examples() {
        let p = |u: &[u128], v: &[u128]| DisjointPair::new(u.to_vec(), v.to_vec()).unwrap();
        assert_eq!(witness_direct(&p(&[0], &[1])).unwrap(), 5);
        assert_eq!(witness_direct(&p(&[], &[])).unwrap(), 1);
        assert_eq!(witness_direct(&p(&[1, 3], &[0, 2])).unwrap(), 26);
        assert!(matches!(witness_direct(&p(&[127], &[])), Err(Error::ResourceExhausted(_))));
    }

    #[test]
    fn rejects_overlap() {
        assert_eq!(DisjointPair::new(vec![1, 2], vec![2]), Err(Error::NotDisjoint(2)));
    }

    #[test]
    fn pair_decoding() {
        assert_eq!(decode_pair(0), DisjointPair::empty());
        assert_eq!(decode_pair(1), DisjointPair::new(vec![0], vec![]).unwrap());
        assert_eq!(decode_pair(5), DisjointPair::new(vec![1], vec![0]).unwrap());
        for m in 0..5000 {
            assert_eq!(encode_pair(&decode_pair(m)), m);
        }
        for n in 0..5000 {
            let (r, m) = unpair(n);
            assert_eq!(pair_index(r, m), n);
        }
    }

    #[test]
    fn next_matching_brute() {
        let cases = [(0u128, 0b101u128, 0b010u128), (37, 0b1000, 0b1), (5, 0, 0b11111), (200, 0b10, 0b100)];
        for &(lo, req, forb) in &cases {
            let want = (lo..lo + 4096).find(|z| z & req == req && z & forb == 0);
            assert_eq!(next_matching(lo, req, forb), want);
        }
        assert_eq!(next_matching(0, 1, 1), None);
        assert_eq!(next_matching(u128::MAX, 0, 1), None);
    }
}
