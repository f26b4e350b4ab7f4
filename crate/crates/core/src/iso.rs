//! Back-and-forth between views.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rado::Vertex;
use crate::table::{PermTable, Provenance};
use crate::views::GraphView;
use crate::witness::{Search, Searcher};

#[derive(Clone, Debug)]
pub struct PartialIso {
    source: GraphView,
    target: GraphView,
    fwd: BTreeMap<Vertex, Vertex>,
    range: BTreeSet<Vertex>,
    domain: BTreeSet<Vertex>,
    inv: BTreeMap<Vertex, Vertex>,
}

impl PartialIso {
    pub fn new(source: GraphView, target: GraphView) -> Self {
        PartialIso {
            source,
            target,
            fwd: BTreeMap::new(),
            range: BTreeSet::new(),
            domain: BTreeSet::new(),
            inv: BTreeMap::new(),
        }
    }

    /// A partial isomorphism from explicit pairs, checked in full.
    pub fn with_seed(source: GraphView, target: GraphView, seed: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut p = PartialIso::new(source, target);
        for &(a, b) in seed {
            if !p.source.in_universe(a)? {
                return Err(Error::OutOfUniverse(a));
            }
            if !p.target.in_universe(b)? {
                return Err(Error::OutOfUniverse(b));
            }
            for (&x, &y) in &p.fwd {
                if x == a || y == b {
                    return Err(Error::SeedInconsistent(format!("({a},{b}) clashes with ({x},{y})")));
                }
                if p.source.adjacent(a, x)? != p.target.adjacent(b, y)? {
                    return Err(Error::SeedInconsistent(format!(
                        "adjacency of {a},{x} differs from that of {b},{y}"
                    )));
                }
            }
            p.insert(a, b);
        }
        Ok(p)
    }

    fn insert(&mut self, a: Vertex, b: Vertex) {
        self.fwd.insert(a, b);
        self.inv.insert(b, a);
        self.domain.insert(a);
        self.range.insert(b);
    }

    pub fn source(&self) -> &GraphView {
        &self.source
    }

    pub fn target(&self) -> &GraphView {
        &self.target
    }

    pub fn pairs(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.fwd
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.fwd.get(&v).copied()
    }

    pub fn preimage(&self, w: Vertex) -> Option<Vertex> {
        self.inv.get(&w).copied()
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    /// Re-check injectivity and adjacency transport on every pair of pairs.
    pub fn check(&self) -> Result<()> {
        let pairs: Vec<_> = self.fwd.iter().map(|(&a, &b)| (a, b)).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(x, y) in &pairs[..i] {
                if self.source.adjacent(a, x)? != self.target.adjacent(b, y)? {
                    return Err(Error::SeedInconsistent(format!(
                        "adjacency of {a},{x} differs from that of {b},{y}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Map `v` to the least target vertex realizing its type over the current pairs.
    pub fn forth(&mut self, v: Vertex, bound: Vertex) -> Result<Vertex> {
        if let Some(w) = self.get(v) {
            return Ok(w);
        }
        if !self.source.in_universe(v)? {
            return Err(Error::OutOfUniverse(v));
        }
        let (mut u, mut nv) = (Vec::new(), Vec::new());
        for (&a, &b) in &self.fwd {
            if self.source.adjacent(v, a)? {
                u.push(b);
            } else {
                nv.push(b);
            }
        }
        let w = extend(&self.target, &u, &nv, &self.range, bound).map_err(|e| stall(e, v))?;
        self.insert(v, w);
        Ok(w)
    }

    /// Pull `w` back to the least source vertex with the matching type.
    pub fn back(&mut self, w: Vertex, bound: Vertex) -> Result<Vertex> {
        if let Some(v) = self.preimage(w) {
            return Ok(v);
        }
        if !self.target.in_universe(w)? {
            return Err(Error::OutOfUniverse(w));
        }
        let (mut u, mut nv) = (Vec::new(), Vec::new());
        for (&b, &a) in &self.inv {
            if self.target.adjacent(w, b)? {
                u.push(a);
            } else {
                nv.push(a);
            }
        }
        let v = extend(&self.source, &u, &nv, &self.domain, bound).map_err(|e| stall(e, w))?;
        self.insert(v, w);
        Ok(v)
    }

    fn least_unmapped(&self) -> Result<Vertex> {
        let mut z = 0;
        while self.fwd.contains_key(&z) || !self.source.in_universe(z)? {
            z += 1;
        }
        Ok(z)
    }

    fn least_unhit(&self) -> Result<Vertex> {
        let mut z = 0;
        while self.inv.contains_key(&z) || !self.target.in_universe(z)? {
            z += 1;
        }
        Ok(z)
    }
}

fn stall(e: Error, at: Vertex) -> Error {
    match e {
        Error::ResourceExhausted(_) => Error::NoWitnessWithinBound(at),
        other => other,
    }
}

/// Least witness if streams can be settled far enough, else the least decided one.
fn extend(view: &GraphView, u: &[Vertex], v: &[Vertex], used: &BTreeSet<Vertex>, bound: Vertex) -> Result<Vertex> {
    let mut s = Searcher::new(view);
    let found = match s.find(u, v, used, bound, true) {
        Err(Error::ResourceExhausted(_)) => {
            let mut s = Searcher::new(view);
            s.find(u, v, used, bound, false)?
        }
        other => other?,
    };
    match found {
        Search::Found(z) => Ok(z),
        _ => Err(Error::ResourceExhausted("no witness".into())),
    }
}

/// Alternate forth on the least unmapped source vertex and back on the least
/// unhit target vertex, `steps` times in total, starting from `seed`.
///
/// A search failure stops the run and is recorded in the table's `stalled` field.
pub fn build_iso(
    source: &GraphView,
    target: &GraphView,
    seed: &[(Vertex, Vertex)],
    steps: u64,
    bound: Vertex,
    provenance: Provenance,
) -> Result<PermTable> {
    let mut p = PartialIso::with_seed(source.clone(), target.clone(), seed)?;
    let mut stalled = None;
    let mut done = 0;
    for i in 0..steps {
        let r = if i % 2 == 0 {
            p.least_unmapped().and_then(|v| p.forth(v, bound))
        } else {
            p.least_unhit().and_then(|w| p.back(w, bound))
        };
        match r {
            Ok(_) => done += 1,
            Err(e @ (Error::NoWitnessWithinBound(_) | Error::ResourceExhausted(_))) => {
                stalled = Some(format!("step {i}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut t = PermTable::new(provenance, source.clone(), target.clone());
    t.depth = done;
    t.pairs = p.fwd;
    t.stalled = stalled;
    Ok(t)
}

/// Continue a table's back-and-forth from its pairs.
pub fn resume(table: &PermTable) -> Result<PartialIso> {
    let seed: Vec<_> = table.pairs.iter().map(|(&a, &b)| (a, b)).collect();
    let mut p = PartialIso::new(table.source.clone(), table.target.clone());
    for (a, b) in seed {
        p.insert(a, b);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::VertexSet;

    #[test]
    fn forth_examples() {
        let sw = GraphView::switch(GraphView::Base, VertexSet::finite([0]));
        let mut p = PartialIso::with_seed(GraphView::Base, sw, &[(0, 0)]).unwrap();
        assert_eq!(p.forth(1, 1 << 20).unwrap(), 2);
        let co = GraphView::flip_within(GraphView::Base, VertexSet::All);
        let mut p = PartialIso::with_seed(GraphView::Base, co, &[(0, 0)]).unwrap();
        assert_eq!(p.forth(1, 1 << 20).unwrap(), 2);
    }

    #[test]
    fn back_examples() {
        let mut p = PartialIso::with_seed(GraphView::Base, GraphView::Base, &[(0, 0)]).unwrap();
        assert_eq!(p.back(1, 1 << 20).unwrap(), 1);
        let mut p = PartialIso::new(GraphView::Base, GraphView::Base);
        assert_eq!(p.back(0, 1 << 20).unwrap(), 0);
    }

    #[test]
    fn identity_and_seeded_builds() {
        let t = build_iso(&GraphView::Base, &GraphView::Base, &[], 20, 1 << 20, Provenance::new("test")).unwrap();
        assert_eq!(t.pairs, (0..20).map(|i| (i, i)).collect());
        let sw = GraphView::switch(GraphView::Base, VertexSet::finite([0]));
        let t = build_iso(&GraphView::Base, &sw, &[(0, 0)], 2, 1 << 20, Provenance::new("test")).unwrap();
        assert_eq!(t.pairs.len(), 3);
        assert_eq!(t.pairs.get(&1), Some(&2));
    }

    #[test]
    fn bad_seeds() {
        let del = GraphView::delete(GraphView::Base, [0]);
        assert!(matches!(
            build_iso(&GraphView::Base, &del, &[(0, 0)], 4, 1 << 20, Provenance::new("test")),
            Err(Error::OutOfUniverse(0))
        ));
        assert!(matches!(
            PartialIso::with_seed(GraphView::Base, GraphView::Base, &[(0, 0), (1, 2)]),
            Err(Error::SeedInconsistent(_))
        ));
    }

    #[test]
    fn prefix_property() {
        let sw = GraphView::switch(GraphView::Base, VertexSet::finite([0]));
        let a = build_iso(&GraphView::Base, &sw, &[(0, 0)], 10, Vertex::MAX, Provenance::new("t")).unwrap();
        let b = build_iso(&GraphView::Base, &sw, &[(0, 0)], 16, Vertex::MAX, Provenance::new("t")).unwrap();
        assert!(a.pairs.iter().all(|(k, v)| b.pairs.get(k) == Some(v)));
        assert!(a.stalled.is_none());
    }
}
