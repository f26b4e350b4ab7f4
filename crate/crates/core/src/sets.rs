//! Decidable vertex sets.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::rado::{adjacent, DisjointPair, Vertex};
use crate::stream::{Stream, StreamProperty};
use crate::views::GraphView;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSet {
    /// Sorted, without duplicates.
    Finite(Vec<Vertex>),
    Nbhd(Vertex),
    NonNbhdStrict(Vertex),
    All,
    Witness(DisjointPair),
    Union(Box<VertexSet>, Box<VertexSet>),
    Intersection(Box<VertexSet>, Box<VertexSet>),
    Difference(Box<VertexSet>, Box<VertexSet>),
    SymDiff(Box<VertexSet>, Box<VertexSet>),
    Stream(Stream),
}

/// Kleene three-valued masks over `z ∈ [0,128)`; `value ⊆ known`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tri128 {
    pub known: u128,
    pub value: u128,
}

impl Tri128 {
    pub const TRUE: Tri128 = Tri128 { known: u128::MAX, value: u128::MAX };
    pub const FALSE: Tri128 = Tri128 { known: u128::MAX, value: 0 };
    pub const UNKNOWN: Tri128 = Tri128 { known: 0, value: 0 };

    pub fn exact(value: u128) -> Self {
        Tri128 { known: u128::MAX, value }
    }

    pub fn not(self) -> Self {
        Tri128 { known: self.known, value: self.known & !self.value }
    }

    pub fn and(self, o: Self) -> Self {
        let f1 = self.known & !self.value;
        let f2 = o.known & !o.value;
        let known = (self.known & o.known) | f1 | f2;
        Tri128 { known, value: self.value & o.value & known }
    }

    pub fn or(self, o: Self) -> Self {
        self.not().and(o.not()).not()
    }

    pub fn xor(self, o: Self) -> Self {
        let known = self.known & o.known;
        Tri128 { known, value: (self.value ^ o.value) & known }
    }

    /// Definitely true positions.
    pub fn yes(self) -> u128 {
        self.value
    }

    /// Positions that may still turn out true.
    pub fn maybe(self) -> u128 {
        !self.known | self.value
    }
}

pub fn tri_and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

pub fn tri_or(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    tri_and(a.map(|x| !x), b.map(|x| !x)).map(|x| !x)
}

impl VertexSet {
    pub fn finite(xs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = xs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet::Finite(v)
    }

    pub fn union(a: VertexSet, b: VertexSet) -> Self {
        VertexSet::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: VertexSet, b: VertexSet) -> Self {
        VertexSet::Intersection(Box::new(a), Box::new(b))
    }

    pub fn difference(a: VertexSet, b: VertexSet) -> Self {
        VertexSet::Difference(Box::new(a), Box::new(b))
    }

    pub fn symdiff(a: VertexSet, b: VertexSet) -> Self {
        VertexSet::SymDiff(Box::new(a), Box::new(b))
    }

    pub fn witness(u: Vec<Vertex>, v: Vec<Vertex>) -> Result<Self> {
        Ok(VertexSet::Witness(DisjointPair::new(u, v)?))
    }

    fn eval(&self, z: Vertex, exact: bool) -> Result<Option<bool>> {
        use VertexSet::*;
        Ok(match self {
            Finite(xs) => Some(xs.binary_search(&z).is_ok()),
            Nbhd(v) => Some(adjacent(*v, z)),
            NonNbhdStrict(v) => Some(z != *v && !adjacent(*v, z)),
            All => Some(true),
            Witness(p) => Some(p.is_witness(z)),
            Union(a, b) => {
                let x = a.eval(z, exact)?;
                if x == Some(true) {
                    return Ok(x);
                }
                tri_or(x, b.eval(z, exact)?)
            }
            Intersection(a, b) => {
                let x = a.eval(z, exact)?;
                if x == Some(false) {
                    return Ok(x);
                }
                tri_and(x, b.eval(z, exact)?)
            }
            Difference(a, b) => {
                let x = a.eval(z, exact)?;
                if x == Some(false) {
                    return Ok(x);
                }
                tri_and(x, b.eval(z, exact)?.map(|y| !y))
            }
            SymDiff(a, b) => match (a.eval(z, exact)?, b.eval(z, exact)?) {
                (Some(x), Some(y)) => Some(x != y),
                _ => None,
            },
            Stream(s) => {
                if exact {
                    Some(s.member(z)?)
                } else {
                    s.lookup(z)
                }
            }
        })
    }

    /// Exact membership; streams enumerate as far as needed.
    pub fn member(&self, z: Vertex) -> Result<bool> {
        Ok(self.eval(z, true)?.unwrap_or(false))
    }

    /// Membership from what streams have produced so far.
    pub fn member_known(&self, z: Vertex) -> Option<bool> {
        self.eval(z, false).ok().flatten()
    }

    pub fn is_finite_literal(&self) -> bool {
        matches!(self, VertexSet::Finite(_))
    }

    pub fn children(&self) -> Vec<&VertexSet> {
        use VertexSet::*;
        match self {
            Union(a, b) | Intersection(a, b) | Difference(a, b) | SymDiff(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    pub fn streams(&self, out: &mut Vec<Stream>) {
        if let VertexSet::Stream(s) = self {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        for c in self.children() {
            c.streams(out);
        }
    }

    pub fn has_streams(&self) -> bool {
        let mut v = Vec::new();
        self.streams(&mut v);
        !v.is_empty()
    }

    /// Vertices at or above 128 that the symbolic region must treat one by one.
    pub fn explicit_high(&self, out: &mut BTreeSet<Vertex>) {
        use VertexSet::*;
        match self {
            Finite(xs) => out.extend(xs.iter().copied().filter(|&x| x >= 128)),
            Nbhd(v) | NonNbhdStrict(v) if *v >= 128 => {
                out.insert(*v);
            }
            Witness(p) => out.extend(p.u().iter().chain(p.v()).copied().filter(|&x| x >= 128)),
            Stream(s) => out.extend(s.known().into_iter().filter(|&x| x >= 128)),
            _ => {}
        }
        for c in self.children() {
            c.explicit_high(out);
        }
    }

    /// Low bit positions whose value decides membership of large vertices.
    pub fn positions(&self) -> u128 {
        use VertexSet::*;
        let own = match self {
            Nbhd(v) | NonNbhdStrict(v) if *v < 128 => 1u128 << *v,
            Witness(p) => p.u().iter().chain(p.v()).filter(|&&x| x < 128).fold(0, |m, &x| m | 1 << x),
            _ => 0,
        };
        self.children().iter().fold(own, |m, c| m | c.positions())
    }

    /// All defining parameters are below 128, so the u128 search is complete for ℕ.
    pub fn params_low(&self) -> bool {
        use VertexSet::*;
        let own = match self {
            Nbhd(v) | NonNbhdStrict(v) => *v < 128,
            Witness(p) => p.max().is_none_or(|m| m < 128),
            _ => true,
        };
        own && self.children().iter().all(|c| c.params_low())
    }

    /// Membership of `z >= 128` outside `explicit_high`, given its low bits `beta` on `positions`.
    /// Streams count as non-members here; callers check stream frontiers.
    pub fn member_symbolic(&self, beta: u128) -> bool {
        use VertexSet::*;
        let bit = |v: Vertex| v < 128 && (beta >> v) & 1 == 1;
        match self {
            Finite(_) | Stream(_) => false,
            Nbhd(v) => bit(*v),
            NonNbhdStrict(v) => !bit(*v),
            All => true,
            Witness(p) => p.u().iter().all(|&u| bit(u)) && p.v().iter().all(|&v| !bit(v)),
            Union(a, b) => a.member_symbolic(beta) || b.member_symbolic(beta),
            Intersection(a, b) => a.member_symbolic(beta) && b.member_symbolic(beta),
            Difference(a, b) => a.member_symbolic(beta) && !b.member_symbolic(beta),
            SymDiff(a, b) => a.member_symbolic(beta) != b.member_symbolic(beta),
        }
    }

    pub fn low_mask(&self) -> Tri128 {
        let mut t = Tri128::UNKNOWN;
        for z in 0..128u32 {
            if let Some(b) = self.member_known(z as Vertex) {
                t.known |= 1 << z;
                if b {
                    t.value |= 1 << z;
                }
            }
        }
        t
    }

    /// No two members adjacent in the base graph, when provable from the constructor.
    pub fn provably_independent(&self) -> Result<bool> {
        use VertexSet::*;
        Ok(match self {
            Finite(xs) => xs.iter().enumerate().all(|(i, &a)| xs[i + 1..].iter().all(|&b| !adjacent(a, b))),
            Stream(s) => s.properties()?.contains(&StreamProperty::Independent),
            Difference(a, _) => a.provably_independent()?,
            Intersection(a, b) => a.provably_independent()? || b.provably_independent()?,
            _ => false,
        })
    }

    /// A member with no neighbour in the set under `view`, when provable from the constructor.
    pub fn provably_isolated(&self, view: &GraphView) -> Result<Option<Vertex>> {
        use VertexSet::*;
        Ok(match self {
            Stream(s) => s.properties()?.into_iter().find_map(|p| match p {
                StreamProperty::Isolated { view: v, vertex } if &v == view => Some(vertex),
                _ => None,
            }),
            Difference(a, b) => match a.provably_isolated(view)? {
                Some(x) if !b.member(x)? => Some(x),
                _ => None,
            },
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(VertexSet::Nbhd(0).member(3).unwrap());
        assert!(!VertexSet::NonNbhdStrict(0).member(0).unwrap());
        assert!(VertexSet::witness(vec![0], vec![1]).unwrap().member(5).unwrap());
    }

    #[test]
    fn symbolic_agrees_with_exact() {
        let sets = vec![
            VertexSet::Nbhd(3),
            VertexSet::NonNbhdStrict(1),
            VertexSet::witness(vec![0, 2], vec![1]).unwrap(),
            VertexSet::difference(VertexSet::Nbhd(1), VertexSet::Nbhd(0)),
            VertexSet::symdiff(VertexSet::All, VertexSet::Nbhd(5)),
        ];
        for s in &sets {
            let p = s.positions();
            for k in 0..64u128 {
                let z = (1u128 << 100) | (k * 0x9e37_79b9) | 128;
                let beta = z & p;
                assert_eq!(s.member_symbolic(beta), s.member(z).unwrap(), "{s:?} {z}");
            }
        }
    }

    #[test]
    fn kleene_masks() {
        let a = Tri128 { known: 0b0111, value: 0b0001 };
        let b = Tri128 { known: 0b1011, value: 0b0011 };
        let and = a.and(b);
        assert_eq!(and.value, 0b0001);
        assert_eq!(and.known & 0b0100, 0b0100);
        assert_eq!(a.not().value, 0b0110);
    }
}
