//! Decidable graphs on ℕ derived from the base graph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rado::{adjacent, Vertex};
use crate::sets::{tri_and, VertexSet};
use crate::stream::Stream;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphView {
    Base,
    /// Flip every pair with exactly one end in the set.
    Switch(Box<GraphView>, VertexSet),
    /// Flip every pair with both ends in the set.
    FlipWithin(Box<GraphView>, VertexSet),
    /// Remove a finite set of vertices.
    Delete(Box<GraphView>, BTreeSet<Vertex>),
    /// Keep only the set, with original labels.
    Restrict(Box<GraphView>, VertexSet),
    /// Flip the pairs {2k, 2k+1}.
    FlipMatching(Box<GraphView>),
}

impl GraphView {
    pub fn switch(g: GraphView, x: VertexSet) -> Self {
        GraphView::Switch(Box::new(g), x)
    }

    pub fn flip_within(g: GraphView, s: VertexSet) -> Self {
        GraphView::FlipWithin(Box::new(g), s)
    }

    pub fn delete(g: GraphView, d: impl IntoIterator<Item = Vertex>) -> Self {
        GraphView::Delete(Box::new(g), d.into_iter().collect())
    }

    pub fn restrict(g: GraphView, s: VertexSet) -> Self {
        GraphView::Restrict(Box::new(g), s)
    }

    pub fn flip_matching(g: GraphView) -> Self {
        GraphView::FlipMatching(Box::new(g))
    }

    pub fn inner(&self) -> Option<&GraphView> {
        match self {
            GraphView::Base => None,
            GraphView::Switch(g, _)
            | GraphView::FlipWithin(g, _)
            | GraphView::Delete(g, _)
            | GraphView::Restrict(g, _)
            | GraphView::FlipMatching(g) => Some(g),
        }
    }

    fn universe_eval(&self, z: Vertex, exact: bool) -> Result<Option<bool>> {
        Ok(match self {
            GraphView::Base => Some(true),
            GraphView::Switch(g, _) | GraphView::FlipWithin(g, _) | GraphView::FlipMatching(g) => {
                g.universe_eval(z, exact)?
            }
            GraphView::Delete(g, d) => {
                if d.contains(&z) {
                    Some(false)
                } else {
                    g.universe_eval(z, exact)?
                }
            }
            GraphView::Restrict(g, s) => {
                let inside = if exact { Some(s.member(z)?) } else { s.member_known(z) };
                if inside == Some(false) {
                    return Ok(inside);
                }
                tri_and(inside, g.universe_eval(z, exact)?)
            }
        })
    }

    pub fn in_universe(&self, z: Vertex) -> Result<bool> {
        Ok(self.universe_eval(z, true)?.unwrap_or(false))
    }

    pub fn in_universe_known(&self, z: Vertex) -> Option<bool> {
        self.universe_eval(z, false).ok().flatten()
    }

    /// Adjacency ignoring the universe check.
    fn raw_adjacent(&self, u: Vertex, v: Vertex, exact: bool) -> Result<Option<bool>> {
        let mem = |s: &VertexSet, z: Vertex| -> Result<Option<bool>> {
            if exact {
                Ok(Some(s.member(z)?))
            } else {
                Ok(s.member_known(z))
            }
        };
        Ok(match self {
            GraphView::Base => Some(adjacent(u, v)),
            GraphView::Switch(g, x) => {
                let inner = g.raw_adjacent(u, v, exact)?;
                match (inner, mem(x, u)?, mem(x, v)?) {
                    (Some(a), Some(p), Some(q)) => Some(a ^ (p != q)),
                    _ => None,
                }
            }
            GraphView::FlipWithin(g, s) => {
                let inner = g.raw_adjacent(u, v, exact)?;
                let both = tri_and(mem(s, u)?, mem(s, v)?);
                match (inner, both) {
                    (Some(a), Some(b)) => Some(a ^ b),
                    _ => None,
                }
            }
            GraphView::FlipMatching(g) => g.raw_adjacent(u, v, exact)?.map(|a| a ^ (u ^ 1 == v)),
            GraphView::Delete(g, _) | GraphView::Restrict(g, _) => g.raw_adjacent(u, v, exact)?,
        })
    }

    /// Adjacency in the view. Errors if either end is outside the universe.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> Result<bool> {
        for z in [u, v] {
            if !self.in_universe(z)? {
                return Err(Error::OutOfUniverse(z));
            }
        }
        if u == v {
            return Ok(false);
        }
        Ok(self.raw_adjacent(u, v, true)?.unwrap_or(false))
    }

    /// Adjacency from what streams have produced so far; no universe check.
    pub fn adjacent_known(&self, u: Vertex, v: Vertex) -> Option<bool> {
        if u == v {
            return Some(false);
        }
        self.raw_adjacent(u, v, false).ok().flatten()
    }

    pub fn streams(&self) -> Vec<Stream> {
        let mut out = Vec::new();
        self.collect_streams(&mut out);
        out
    }

    fn collect_streams(&self, out: &mut Vec<Stream>) {
        match self {
            GraphView::Base | GraphView::Delete(..) | GraphView::FlipMatching(_) => {}
            GraphView::Switch(_, s) | GraphView::FlipWithin(_, s) | GraphView::Restrict(_, s) => s.streams(out),
        }
        if let Some(g) = self.inner() {
            g.collect_streams(out);
        }
    }

    pub fn sets(&self) -> Vec<&VertexSet> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                GraphView::Base => return out,
                GraphView::Switch(g, s) | GraphView::FlipWithin(g, s) | GraphView::Restrict(g, s) => {
                    out.push(s);
                    cur = g;
                }
                GraphView::Delete(g, _) | GraphView::FlipMatching(g) => cur = g,
            }
        }
    }

    pub fn deleted(&self) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        let mut cur = self;
        while let Some(g) = cur.inner() {
            if let GraphView::Delete(_, d) = cur {
                out.extend(d.iter().copied());
            }
            cur = g;
        }
        out
    }
}

fn simplify_set(s: VertexSet) -> VertexSet {
    match s {
        VertexSet::SymDiff(a, b) => {
            let (a, b) = (simplify_set(*a), simplify_set(*b));
            match (&a, &b) {
                _ if a == b => VertexSet::Finite(Vec::new()),
                (VertexSet::Finite(x), VertexSet::Finite(y)) => {
                    let x: BTreeSet<_> = x.iter().copied().collect();
                    let y: BTreeSet<_> = y.iter().copied().collect();
                    VertexSet::finite(x.symmetric_difference(&y).copied())
                }
                (VertexSet::Finite(x), _) if x.is_empty() => b,
                (_, VertexSet::Finite(y)) if y.is_empty() => a,
                _ => VertexSet::symdiff(a, b),
            }
        }
        other => other,
    }
}

/// Merge nested switches into one over the symmetric difference, and drop trivial ones.
pub fn simplify(view: &GraphView) -> GraphView {
    match view {
        GraphView::Base => GraphView::Base,
        GraphView::Switch(g, y) => {
            let inner = simplify(g);
            let (base, set) = match inner {
                GraphView::Switch(h, x) => (*h, simplify_set(VertexSet::symdiff(x, y.clone()))),
                other => (other, simplify_set(y.clone())),
            };
            match set {
                VertexSet::All => base,
                VertexSet::Finite(ref v) if v.is_empty() => base,
                s => GraphView::switch(base, s),
            }
        }
        GraphView::FlipWithin(g, s) => match s {
            VertexSet::Finite(v) if v.len() < 2 => simplify(g),
            _ => GraphView::flip_within(simplify(g), s.clone()),
        },
        GraphView::Delete(g, d) => {
            if d.is_empty() {
                simplify(g)
            } else {
                GraphView::Delete(Box::new(simplify(g)), d.clone())
            }
        }
        GraphView::Restrict(g, s) => GraphView::restrict(simplify(g), s.clone()),
        GraphView::FlipMatching(g) => match simplify(g) {
            GraphView::FlipMatching(h) => *h,
            h => GraphView::flip_matching(h),
        },
    }
}

/// Is the number of adjacent pairs inside `s` odd?
pub fn odd_parity(view: &GraphView, s: &[Vertex]) -> Result<bool> {
    if !(3..=5).contains(&s.len()) {
        return Err(Error::BadArity(s.len()));
    }
    let mut odd = false;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            odd ^= view.adjacent(s[i], s[j])?;
        }
    }
    Ok(odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(xs: &[Vertex]) -> VertexSet {
        VertexSet::finite(xs.iter().copied())
    }

    #[test]
    fn eval_examples() {
        let v = GraphView::switch(GraphView::Base, fin(&[0, 2]));
        assert!(!v.adjacent(0, 1).unwrap());
        assert!(!v.adjacent(0, 2).unwrap());
        let c = GraphView::flip_within(GraphView::Base, VertexSet::All);
        for u in 0..=32 {
            for w in 0..=32 {
                if u != w {
                    assert_eq!(c.adjacent(u, w).unwrap(), !adjacent(u, w));
                }
            }
        }
        let d = GraphView::delete(GraphView::Base, [3]);
        assert_eq!(d.adjacent(3, 1), Err(Error::OutOfUniverse(3)));
    }

    #[test]
    fn simplify_examples() {
        let x = fin(&[0, 5]);
        let twice = GraphView::switch(GraphView::switch(GraphView::Base, x.clone()), x);
        assert_eq!(simplify(&twice), GraphView::Base);
        let n = VertexSet::Nbhd(0);
        let twice = GraphView::switch(GraphView::switch(GraphView::Base, n.clone()), n);
        assert_eq!(simplify(&twice), GraphView::Base);
        let two = GraphView::switch(GraphView::switch(GraphView::Base, fin(&[0])), fin(&[1]));
        let s = simplify(&two);
        assert_eq!(s, GraphView::switch(GraphView::Base, fin(&[0, 1])));
        for u in 0..16 {
            for w in 0..16 {
                if u != w {
                    assert_eq!(s.adjacent(u, w).unwrap(), two.adjacent(u, w).unwrap());
                }
            }
        }
        assert_eq!(simplify(&GraphView::Base), GraphView::Base);
    }

    #[test]
    fn parity_examples() {
        assert!(!odd_parity(&GraphView::Base, &[0, 1, 2]).unwrap());
        assert!(odd_parity(&GraphView::Base, &[0, 1, 3]).unwrap());
        assert!(!odd_parity(&GraphView::Base, &[0, 1, 2, 3]).unwrap());
        assert_eq!(odd_parity(&GraphView::Base, &[0, 1]), Err(Error::BadArity(2)));
    }
}
