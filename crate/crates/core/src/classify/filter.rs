//! Membership in the neighbourhood filter and its stabilizer.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{shape_of, Shape};
use crate::error::{Error, Result};
use crate::rado::{adjacent, Vertex};
use crate::sets::VertexSet;
use crate::table::PermTable;
use crate::verdict::{Certificate, Rule, Verdict};
use crate::views::GraphView;
use crate::witness::{Search, Searcher};

/// Symbolic containment attempts per call.
const MAX_PROOFS: usize = 256;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_fn(n: usize, mut f: impl FnMut(Vertex) -> Result<bool>) -> Result<Self> {
        let mut w = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            if f(i as Vertex)? {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(Bits(w))
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

fn least_mode(view: &GraphView) -> bool {
    view.streams().is_empty()
}

/// Is `Y` in the filter generated by the neighbourhoods R(t)?
///
/// Searches T ⊆ [0,window), |T| ≤ k_max, with ∩R(t) ∩ [0,window) ⊆ Y, and tries
/// to prove ∩R(t) ⊆ Y outright. Failing that, looks for a vertex v with
/// R(v) ∩ Y = ∅, which rules membership out.
pub fn filter_member(y: &VertexSet, window: Vertex, k_max: usize) -> Result<Verdict> {
    let claim = format!("{y} is in the neighbourhood filter");
    let n = window as usize;
    let ymask = Bits::from_fn(n, |z| y.member(z))?;
    let nb: Vec<Bits> = (0..window).map(|t| Bits::from_fn(n, |z| Ok(adjacent(t, z)))).collect::<Result<_>>()?;
    let full = Bits::from_fn(n, |_| Ok(true))?;
    let outside = GraphView::restrict(GraphView::Base, VertexSet::difference(VertexSet::All, y.clone()));
    let mut searcher = Searcher::new(&outside);
    let least = least_mode(&outside);
    let none = BTreeSet::new();
    let mut fallback: Option<Vec<Vertex>> = None;
    let mut proofs = 0;
    for k in 0..=k_max.min(n) {
        for t in (0..window).combinations(k) {
            let inter = t.iter().fold(full.clone(), |acc, &i| acc.and(&nb[i as usize]));
            // an intersection that is empty on the window says nothing
            if inter.is_empty() || !inter.subset(&ymask) {
                continue;
            }
            if proofs >= MAX_PROOFS {
                if fallback.is_none() && !escapes(y, &t)? {
                    fallback = Some(t);
                }
                continue;
            }
            proofs += 1;
            match searcher.find(&t, &[], &none, Vertex::MAX, least)? {
                Search::NoneExists => {
                    return Ok(Verdict::settled(claim, Rule::FilterContainment, window as u64, k_max as u64)
                        .with_certificate(Certificate::Set { vertices: t }));
                }
                Search::Found(_) => {}
                Search::NoneWithin => {
                    if fallback.is_none() && !escapes(y, &t)? {
                        fallback = Some(t);
                    }
                }
            }
        }
    }
    if let Some(t) = fallback {
        return Ok(Verdict::supported(claim, window as u64, k_max as u64)
            .with_note(format!("∩R(t) for T = {{{}}} lies in the set on the window", crate::rado::join(&t))));
    }
    let inside = GraphView::restrict(GraphView::Base, y.clone());
    let mut searcher = Searcher::new(&inside);
    let least = least_mode(&inside);
    for v in 0..window {
        if searcher.find(&[v], &[], &none, Vertex::MAX, least)? == Search::NoneExists {
            return Ok(Verdict::refuted(claim, Certificate::Vertex { vertex: v }, window as u64, k_max as u64)
                .with_rule(Rule::NeighbourhoodDisjoint)
                .with_note(format!("R({v}) is disjoint from the set")));
        }
    }
    Ok(Verdict::supported(format!("{y} is not in the neighbourhood filter"), window as u64, k_max as u64)
        .with_note(format!("no T with |T| <= {k_max} on the window")))
}

/// Whether one of the least few common neighbours of T in R lies outside Y.
fn escapes(y: &VertexSet, t: &[Vertex]) -> Result<bool> {
    const TRIES: usize = 16;
    let mut base = Searcher::new(&GraphView::Base);
    let mut seen = BTreeSet::new();
    for _ in 0..TRIES {
        match base.find(t, &[], &seen, Vertex::MAX, true)? {
            Search::Found(z) if !y.member(z)? => return Ok(true),
            Search::Found(z) => {
                seen.insert(z);
            }
            _ => return Ok(false),
        }
    }
    Ok(false)
}

/// Shape rules for membership of g in Aut(F_R), if one applies.
fn filter_rule(g: &PermTable, window: Vertex, k_max: usize) -> Option<Verdict> {
    let claim = "in Aut(F_R)";
    let (w, k) = (window as u64, k_max as u64);
    let fixed = |v: Vertex| g.image(v) == Some(v);
    match shape_of(g) {
        Shape::Automorphism => Some(Verdict::settled(claim, Rule::ViewAutomorphism, w, k)),
        Shape::Finitary { .. } => Some(Verdict::settled(claim, Rule::FinitarySupport, w, k)),
        Shape::BlockMap { .. } => Some(Verdict::settled(claim, Rule::IdentityOnNeighbourhood, w, k)),
        Shape::Matching { .. } | Shape::Flip { s: VertexSet::Finite(_) } => {
            Some(Verdict::settled(claim, Rule::FiniteAtEachVertex, w, k))
        }
        Shape::Anti => Some(
            Verdict::refuted(claim, Certificate::Vertex { vertex: 0 }, w, k)
                .with_rule(Rule::AntiAutomorphismDisjoint)
                .with_note("R(0)^g is disjoint from R(0^g)"),
        ),
        Shape::Flip { s: VertexSet::NonNbhdStrict(v) } if fixed(v) => {
            Some(Verdict::settled(claim, Rule::FlipNonNeighbours, w, k))
        }
        Shape::Switch { x: VertexSet::Finite(xs), forward: true } if xs.len() == 1 && fixed(xs[0]) => Some(
            Verdict::refuted(claim, Certificate::Vertex { vertex: xs[0] }, w, k)
                .with_rule(Rule::SwitchAtFixedVertex)
                .with_note(format!("R({0})^g is the strict non-neighbourhood of {0}", xs[0])),
        ),
        Shape::Switch { x, forward } => {
            // a vertex sent into X and one sent outside it (Y = complement). Then
            // R(x^g) ∩ R(x)^g ⊆ X and R(y^g) ∩ R(y)^g ⊆ Y; note the second is the image
            // R(y)^g, not R(y^g) twice. The four-way intersection is empty, so g can't keep the filter.
            let side = |v: Vertex| -> Option<bool> {
                if forward {
                    x.member_known(g.image(v)?)
                } else {
                    x.member_known(v)
                }
            };
            let a = (0..window).find(|&v| side(v) == Some(true))?;
            let b = (0..window).find(|&v| side(v) == Some(false))?;
            Some(
                Verdict::refuted(claim, Certificate::Pair { a, b }, w, k)
                    .with_rule(Rule::SwitchingNotFilter)
                    .with_note(format!("{a} and {b} land on opposite sides of the switching set")),
            )
        }
        _ => None,
    }
}

/// Per-vertex search for w with R(v^g) ∩ R(w) ⊆ R(v)^g on the window, in both directions.
fn filter_window(g: &PermTable, window: Vertex, k_max: usize) -> Result<Verdict> {
    let inv: BTreeMap<Vertex, Vertex> = g.pairs.iter().map(|(&a, &b)| (b, a)).collect();
    let pre = |y: Vertex| inv.get(&y).copied().or_else(|| g.preimage(y));
    let dom = g.covered_within(window);
    let ran = (0..window).find(|&y| pre(y).is_none()).unwrap_or(window);
    let eff = dom.min(ran);
    let n = eff as usize;
    let full = Bits::from_fn(n, |_| Ok(true))?;
    let nb: Vec<Bits> = (0..eff).map(|t| Bits::from_fn(n, |z| Ok(adjacent(t, z)))).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for v in 0..eff {
        for dir in [false, true] {
            let (centre, target) = if dir {
                (pre(v).expect("covered"), Bits::from_fn(n, |y| Ok(adjacent(v, g.image(y).expect("covered"))))?)
            } else {
                (g.image(v).expect("covered"), Bits::from_fn(n, |y| Ok(adjacent(v, pre(y).expect("covered"))))?)
            };
            let base = Bits::from_fn(n, |z| Ok(adjacent(centre, z)))?.and(&full);
            let found = (0..k_max.min(n)).any(|k| {
                (0..eff).combinations(k).any(|t| {
                    t.iter().fold(base.clone(), |acc, &i| acc.and(&nb[i as usize])).subset(&target)
                })
            });
            if !found {
                failures.push(v);
            }
        }
    }
    let (w, k) = (eff as u64, k_max as u64);
    let mut verdict = if failures.is_empty() {
        Verdict::supported("in Aut(F_R)", w, k)
    } else {
        failures.dedup();
        Verdict::supported("not in Aut(F_R)", w, k).with_note(format!(
            "no witness set for v in {{{}}}",
            crate::rado::join(&failures[..failures.len().min(8)])
        ))
    };
    if eff < window {
        let extra = format!("table covers [0,{eff}) of the requested window {window}");
        verdict.note = Some(match verdict.note {
            Some(n) => format!("{n}; {extra}"),
            None => extra,
        });
    }
    Ok(verdict)
}

/// Evidence that g preserves the neighbourhood filter.
pub fn aut_filter_evidence(g: &PermTable, window: Vertex, k_max: usize) -> Result<Verdict> {
    if let Some(v) = filter_rule(g, window, k_max) {
        return Ok(v);
    }
    match filter_window(g, window, k_max) {
        Err(Error::NotMaterialized { .. }) => Ok(Verdict::supported("in Aut(F_R)", 0, k_max as u64)),
        other => other,
    }
}

/// R(v)^g ∩ R(v^g) on the window, for cross-checking the rule-based refutations.
pub fn image_meets_neighbourhood(g: &PermTable, v: Vertex, window: Vertex) -> Option<Vec<Vertex>> {
    let gv = g.image(v)?;
    let mut out = Vec::new();
    for x in 0..window {
        if adjacent(v, x) {
            let y = g.image(x)?;
            if adjacent(gv, y) {
                out.push(y);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::VerdictKind;

    #[test]
    fn generators_and_intersections() {
        let v = filter_member(&VertexSet::Nbhd(3), 32, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::ExactlySettled);
        assert_eq!(v.certificate, Some(Certificate::Set { vertices: vec![3] }));
        let y = VertexSet::intersection(VertexSet::Nbhd(1), VertexSet::Nbhd(2));
        let v = filter_member(&y, 32, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::ExactlySettled);
    }

    #[test]
    fn strict_non_neighbourhood_is_out() {
        let v = filter_member(&VertexSet::NonNbhdStrict(0), 64, 3).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.certificate, Some(Certificate::Vertex { vertex: 0 }));
        assert!((0..4096).all(|z| !(adjacent(0, z) && VertexSet::NonNbhdStrict(0).member(z).unwrap())));
    }

    #[test]
    fn cofinite_sets_are_in() {
        let y = VertexSet::difference(VertexSet::All, VertexSet::finite([0, 1, 2]));
        assert_eq!(filter_member(&y, 32, 2).unwrap().kind, VerdictKind::ExactlySettled);
    }

    #[test]
    fn identity_window_search() {
        let v = filter_window(&PermTable::identity(24), 24, 2).unwrap();
        assert_eq!(v.claim, "in Aut(F_R)");
    }
}
