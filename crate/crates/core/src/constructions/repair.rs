//! Finding the finite set whose removal makes a switched graph a copy of R.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::Result;
use crate::rado::{DisjointPair, Vertex};
use crate::sets::VertexSet;
use crate::verdict::Verdict;
use crate::views::GraphView;
use crate::witness::{extension_evidence, scan_pairs, Search};

#[derive(Clone, Debug, Serialize)]
pub struct Repair {
    /// The pair with no witness after switching, if one was found.
    pub pair: Option<DisjointPair>,
    /// U ∪ V, removed before switching.
    pub removed: Vec<Vertex>,
    /// Extension evidence for the switch of R minus `removed`.
    pub verdict: Verdict,
}

/// Both bullet conditions on the window: every witness of (U^c_X ∪ V_X, U_X ∪ V^c_X)
/// lies in X and no witness of (U_X ∪ V^c_X, U^c_X ∪ V_X) does.
pub fn bullets_hold(x: &VertexSet, p: &DisjointPair, window: Vertex) -> Result<bool> {
    let (mut ux, mut uc, mut vx, mut vc) = (vec![], vec![], vec![], vec![]);
    for &u in p.u() {
        if x.member(u)? { ux.push(u) } else { uc.push(u) }
    }
    for &v in p.v() {
        if x.member(v)? { vx.push(v) } else { vc.push(v) }
    }
    let outer = DisjointPair::new([uc.clone(), vx.clone()].concat(), [ux.clone(), vc.clone()].concat())?;
    let inner = DisjointPair::new([ux, vc].concat(), [uc, vx].concat())?;
    for z in 0..window {
        if outer.is_witness(z) && !x.member(z)? {
            return Ok(false);
        }
        if inner.is_witness(z) && x.member(z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search (U,V) with |U|+|V| <= depth inside the window that has no witness
/// after switching over X; remove U ∪ V and test the switched remainder.
///
/// Pairs are taken from the engine's exact answer when it has one and
/// otherwise from the two bullet conditions on the window.
pub fn switching_repair(x: &VertexSet, depth: usize, window: Vertex) -> Result<Repair> {
    let switched = GraphView::switch(GraphView::Base, x.clone());
    let mut found: Option<DisjointPair> = None;
    let mut err = None;
    scan_pairs(&switched, window, depth, |o| {
        let p = match DisjointPair::new(o.u.to_vec(), o.v.to_vec()) {
            Ok(p) => p,
            Err(e) => {
                err = Some(e);
                return Ok(ControlFlow::Break(()));
            }
        };
        let bad = match o.search {
            Search::NoneExists => true,
            Search::Found(_) => false,
            Search::NoneWithin => bullets_hold(x, &p, window)?,
        };
        if bad {
            found = Some(p);
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let removed: Vec<Vertex> = found.as_ref().map(|p| p.u().iter().chain(p.v()).copied().collect()).unwrap_or_default();
    let mut removed = removed;
    removed.sort_unstable();
    let inner = if removed.is_empty() {
        GraphView::Base
    } else {
        GraphView::delete(GraphView::Base, removed.iter().copied())
    };
    let view = GraphView::switch(inner, x.clone());
    let verdict = extension_evidence(&view, window, depth.max(1))?;
    Ok(Repair { pair: found, removed, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbourhood_switch_needs_its_centre_removed() {
        let r = switching_repair(&VertexSet::Nbhd(0), 2, 24).unwrap();
        assert_eq!(r.removed, vec![0]);
        assert!(r.verdict.is_positive());
        assert!(bullets_hold(&VertexSet::Nbhd(0), r.pair.as_ref().unwrap(), 256).unwrap());
    }

    #[test]
    fn finite_and_total_switches_need_nothing() {
        for x in [VertexSet::finite([0]), VertexSet::All] {
            let r = switching_repair(&x, 2, 24).unwrap();
            assert!(r.removed.is_empty() && r.verdict.is_positive());
        }
    }
}
