//! Copies of R inside views, and the exceptional-set groups of the copy hypergraph.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use super::{shape_of, Shape};
use crate::error::{Error, Result};
use crate::rado::{adjacent, Vertex};
use crate::sets::VertexSet;
use crate::stream::{FixedSource, Stream, StreamProperty};
use crate::table::PermTable;
use crate::verdict::{Certificate, Rule, SetCase, Verdict, VerdictKind};
use crate::views::GraphView;
use crate::witness::{extension_over, isolation_rule, Search, Searcher};

/// Largest number of candidate exceptional sets tried per call.
const MAX_CANDIDATES: usize = 1 << 12;

#[derive(Clone, Debug, Serialize)]
pub struct SetEvidence {
    pub verdict: Verdict,
    /// The exceptional set that passed, if one did.
    pub set: Option<Vec<Vertex>>,
}

fn decided(view: &GraphView, z: Vertex) -> Result<bool> {
    match view.in_universe(z) {
        Err(Error::ResourceExhausted(_)) => Ok(view.in_universe_known(z) == Some(true)),
        other => other,
    }
}

fn listed_members(s: &VertexSet, out: &mut BTreeSet<Vertex>) {
    match s {
        VertexSet::Finite(xs) => out.extend(xs.iter().copied()),
        VertexSet::Stream(st) => out.extend(st.known()),
        _ => {}
    }
    for c in s.children() {
        listed_members(c, out);
    }
}

/// Members of the restricted view below `window`, then explicitly known larger
/// members, up to `window` vertices in all.
fn scan_universe(view: &GraphView, s: &VertexSet, window: Vertex) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for z in 0..window {
        if decided(view, z)? {
            out.push(z);
        }
    }
    let mut extra = BTreeSet::new();
    listed_members(s, &mut extra);
    for z in extra.range(window..) {
        if out.len() as Vertex >= window {
            break;
        }
        if view.in_universe_known(*z) == Some(true) {
            out.push(*z);
        }
    }
    Ok(out)
}

/// Does S induce a copy of R in the view? Extension evidence on the restriction.
pub fn copy_evidence(view: &GraphView, s: &VertexSet, window: Vertex, d: usize) -> Result<Verdict> {
    if d == 0 {
        return Err(Error::PreconditionViolated("copy evidence needs depth at least 1".into()));
    }
    let claim = format!("{s} induces a copy of R in {view}");
    if let Some(x) = s.provably_isolated(view)? {
        return Ok(Verdict::refuted(claim, Certificate::Split { u: vec![x], v: vec![] }, window as u64, d as u64)
            .with_rule(isolation_rule(s)?)
            .with_note(format!("{x} has no neighbour in the set")));
    }
    if *view == GraphView::Base {
        for x in universal_candidates(s) {
            if s.member(x)? && within_closed_nbhd(s, x) {
                return Ok(Verdict::refuted(claim, Certificate::Split { u: vec![], v: vec![x] }, window as u64, d as u64)
                    .with_rule(Rule::UniversalVertex)
                    .with_note(format!("every other member is adjacent to {x}")));
            }
        }
    }
    let r = GraphView::restrict(view.clone(), s.clone());
    let universe = scan_universe(&r, s, window)?;
    Ok(extension_over(&r, &universe, window, d)?.with_claim(claim))
}

fn universal_candidates(s: &VertexSet) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    let mut stack = vec![s];
    while let Some(t) = stack.pop() {
        match t {
            VertexSet::Finite(xs) => out.extend(xs.iter().copied()),
            VertexSet::Nbhd(x) => {
                out.insert(*x);
            }
            VertexSet::Witness(p) => out.extend(p.u().iter().copied()),
            VertexSet::Union(a, b) | VertexSet::Intersection(a, b) | VertexSet::Difference(a, b) | VertexSet::SymDiff(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            _ => {}
        }
    }
    out
}

/// Structural proof that S ⊆ R(x) ∪ {x} in R.
fn within_closed_nbhd(s: &VertexSet, x: Vertex) -> bool {
    match s {
        VertexSet::Finite(ys) => ys.iter().all(|&y| y == x || adjacent(x, y)),
        VertexSet::Nbhd(y) => *y == x,
        VertexSet::Witness(p) => p.u().contains(&x),
        VertexSet::Union(a, b) => within_closed_nbhd(a, x) && within_closed_nbhd(b, x),
        VertexSet::Intersection(a, b) => within_closed_nbhd(a, x) || within_closed_nbhd(b, x),
        VertexSet::Difference(a, _) => within_closed_nbhd(a, x),
        _ => false,
    }
}

/// Is x isolated inside S under the view?
pub fn isolated_vertex_cert(view: &GraphView, s: &VertexSet, x: Vertex, window: Vertex) -> Result<Verdict> {
    let claim = format!("{x} is isolated in {s} under {view}");
    let w = window as u64;
    if !s.member(x)? {
        return Err(Error::PreconditionViolated(format!("{x} is not in {s}")));
    }
    if s.provably_isolated(view)? == Some(x) {
        return Ok(Verdict::settled(claim, isolation_rule(s)?, w, 1));
    }
    let r = GraphView::restrict(view.clone(), s.clone());
    for y in 0..window {
        if y != x && decided(&r, y)? && view.adjacent(x, y)? {
            return Ok(Verdict::refuted(claim, Certificate::Pair { a: x, b: y }, w, 1));
        }
    }
    let least = r.streams().is_empty();
    match Searcher::new(&r).find(&[x], &[], &BTreeSet::new(), Vertex::MAX, least)? {
        Search::NoneExists => Ok(Verdict::settled(claim, Rule::BitPatternExhaustion, w, 1)),
        Search::Found(y) => Ok(Verdict::refuted(claim, Certificate::Pair { a: x, b: y }, w, 1)),
        Search::NoneWithin => Ok(Verdict::supported(claim, w, 1)),
    }
}

/// Image of X under g (or g⁻¹) as a set expression.
///
/// Finitary permutations give an exact expression. Otherwise the image is read
/// off the table: decided below the least vertex the table does not reach,
/// and an isolated vertex of X transports along the isomorphism.
pub fn image_set(g: &PermTable, x: &VertexSet, inverse: bool) -> Result<VertexSet> {
    let f = |v: Vertex| if inverse { g.preimage(v) } else { g.image(v) };
    if let Shape::Finitary { moved } = shape_of(g) {
        let inside: Vec<Vertex> = moved
            .iter()
            .filter(|&&s| x.member(s).unwrap_or(false))
            .filter_map(|&s| f(s))
            .collect();
        return Ok(VertexSet::union(
            VertexSet::difference(x.clone(), VertexSet::finite(moved)),
            VertexSet::finite(inside),
        ));
    }
    let (from, to) = if inverse { (&g.target, &g.source) } else { (&g.source, &g.target) };
    let pairs: Vec<(Vertex, Vertex)> = if inverse {
        g.pairs.iter().map(|(&a, &b)| (b, a)).collect()
    } else {
        g.pairs.iter().map(|(&a, &b)| (a, b)).collect()
    };
    let reached: BTreeSet<Vertex> = pairs.iter().map(|&(_, b)| b).collect();
    let mut frontier = (0..).find(|y| !reached.contains(y)).unwrap_or(0);
    let mut members = Vec::new();
    for &(a, b) in &pairs {
        match x.member_known(a) {
            Some(true) => members.push(b),
            Some(false) => {}
            None => frontier = frontier.min(b),
        }
    }
    let mut props = Vec::new();
    if let Some(iso) = x.provably_isolated(from)? {
        if let Some(gi) = f(iso) {
            props.push(StreamProperty::Isolated { view: to.clone(), vertex: gi });
        }
    }
    let name = format!("image{}[{}]({x})", if inverse { "-" } else { "" }, g.provenance);
    let src = Arc::new(FixedSource::new(members, frontier, props));
    Ok(VertexSet::Stream(Stream::new(name, "", src)))
}

/// Image of E∖S. For the block map the forward image of its edge is the
/// independent stream D minus finitely many points.
pub fn edge_image(g: &PermTable, e: &VertexSet, s: &[Vertex], inverse: bool) -> Result<VertexSet> {
    if let (Shape::BlockMap { v }, false) = (shape_of(g), inverse) {
        if let Some((edge, d)) = crate::constructions::g6_blocks(v) {
            if &edge == e {
                let mut removed = Vec::new();
                for &x in s {
                    if e.member(x)? {
                        removed.push(g.image(x).ok_or(Error::NotMaterialized { window: x + 1, covered: x })?);
                    }
                }
                return Ok(VertexSet::difference(d, VertexSet::finite(removed)));
            }
        }
    }
    let rest = if s.is_empty() { e.clone() } else { VertexSet::difference(e.clone(), VertexSet::finite(s.iter().copied())) };
    image_set(g, &rest, inverse)
}

fn both_images(
    g: &PermTable,
    e: &VertexSet,
    s: &[Vertex],
    window: Vertex,
    d: usize,
) -> Result<std::result::Result<(), (String, Verdict)>> {
    for inverse in [false, true] {
        let img = edge_image(g, e, s, inverse)?;
        let v = copy_evidence(&GraphView::Base, &img, window, d)?;
        if v.is_refuted() {
            let label = format!("({e} - {{{}}}){}", crate::rado::join(s), if inverse { "g^-1" } else { "g" });
            return Ok(Err((label, v)));
        }
    }
    Ok(Ok(()))
}

fn candidates(pool: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0..=pool.len()).flat_map(move |k| pool.iter().copied().combinations(k)).take(MAX_CANDIDATES)
}

/// Search a finite S ⊆ E ∩ [0,s_max) with (E∖S)g and (E∖S)g⁻¹ both copies of R.
pub fn autstar_evidence(
    g: &PermTable,
    e: &VertexSet,
    window: Vertex,
    d: usize,
    s_max: Vertex,
) -> Result<SetEvidence> {
    let claim = format!("some finite S ⊆ {e} has (E-S)g and (E-S)g^-1 edges");
    let (w, dd) = (window as u64, d as u64);
    let mut pool = Vec::new();
    for z in 0..s_max {
        if e.member_known(z) == Some(true) {
            pool.push(z);
        }
    }
    let mut cases = Vec::new();
    let mut all_refuted = true;
    let mut first_rule = None;
    for s in candidates(&pool) {
        match both_images(g, e, &s, window, d)? {
            Ok(()) => {
                return Ok(SetEvidence {
                    verdict: Verdict::supported(claim, w, dd)
                        .with_note(format!("S = {{{}}}", crate::rado::join(&s))),
                    set: Some(s),
                })
            }
            Err((label, v)) => {
                all_refuted &= v.kind == VerdictKind::Refuted;
                if s.is_empty() {
                    first_rule = v.rule;
                }
                cases.push(SetCase { set: s, edge: label, certificate: Box::new(v.certificate.unwrap_or(Certificate::Set { vertices: vec![] })) });
            }
        }
    }
    // An independent image stays independent after removing any finite set.
    if all_refuted && first_rule == Some(Rule::IndependentStream) {
        return Ok(SetEvidence {
            verdict: Verdict::refuted(claim, Certificate::PerSet { cases }, w, dd).with_rule(Rule::IndependentStream),
            set: None,
        });
    }
    Ok(SetEvidence {
        verdict: Verdict::supported(format!("no S ⊆ {e} ∩ [0,{s_max}) makes both images edges"), w, dd)
            .with_certificate(Certificate::PerSet { cases }),
        set: None,
    })
}

/// Search one finite S ⊆ [0,s_max) that works for every edge in the family.
pub fn faut_evidence(
    g: &PermTable,
    edges: &[VertexSet],
    window: Vertex,
    d: usize,
    s_max: Vertex,
) -> Result<SetEvidence> {
    if edges.is_empty() {
        return Err(Error::EmptyEdgeFamily);
    }
    let claim = format!("one finite S serves all {} edges", edges.len());
    let (w, dd) = (window as u64, d as u64);
    let pool: Vec<Vertex> = (0..s_max).collect();
    let mut cases = Vec::new();
    let mut all_refuted = true;
    for s in candidates(&pool) {
        // edges missing S first: they are the ones the argument uses
        let meets = |e: &VertexSet| s.iter().any(|&x| e.member_known(x) != Some(false));
        let order = edges.iter().sorted_by_key(|e| meets(e));
        let mut failed = None;
        for e in order {
            let inside: Vec<Vertex> = s.iter().copied().filter(|&x| e.member_known(x) != Some(false)).collect();
            if let Err(f) = both_images(g, e, &inside, window, d)? {
                failed = Some(f);
                break;
            }
        }
        match failed {
            None => {
                return Ok(SetEvidence {
                    verdict: Verdict::supported(claim, w, dd).with_note(format!("S = {{{}}}", crate::rado::join(&s))),
                    set: Some(s),
                })
            }
            Some((label, v)) => {
                all_refuted &= v.kind == VerdictKind::Refuted;
                cases.push(SetCase { set: s, edge: label, certificate: Box::new(v.certificate.unwrap_or(Certificate::Set { vertices: vec![] })) });
            }
        }
    }
    // The staged edges E_n eventually avoid any finite S, so the failure is not an artefact of s_max.
    if all_refuted && g.provenance.construction == "g5" {
        return Ok(SetEvidence {
            verdict: Verdict::refuted(claim, Certificate::PerSet { cases }, w, dd).with_rule(Rule::StagedIsolation),
            set: None,
        });
    }
    Ok(SetEvidence {
        verdict: Verdict::supported(format!("no S ⊆ [0,{s_max}) serves all {} edges", edges.len()), w, dd)
            .with_certificate(Certificate::PerSet { cases }),
        set: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_finitary;

    #[test]
    fn neighbourhoods_are_copies() {
        let v = copy_evidence(&GraphView::Base, &VertexSet::Nbhd(0), 24, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::SupportedUpTo);
        assert!(v.note.is_none());
    }

    #[test]
    fn closed_neighbourhood_is_not() {
        let s = VertexSet::union(VertexSet::finite([0]), VertexSet::Nbhd(0));
        let v = copy_evidence(&GraphView::Base, &s, 24, 1).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.certificate.unwrap(), Certificate::Split { u: vec![], v: vec![0] });
        let v = isolated_vertex_cert(&GraphView::Base, &s, 0, 16).unwrap();
        assert!(v.is_refuted());
    }

    #[test]
    fn finitary_images() {
        let t = build_finitary(&[vec![0, 1]]).unwrap();
        let img = image_set(&t, &VertexSet::Nbhd(0), false).unwrap();
        for z in 0..64 {
            let want = (z != 1 && crate::rado::adjacent(0, z) && z != 0) || z == 0;
            assert_eq!(img.member(z).unwrap(), want, "{z}");
        }
        let ev = faut_evidence(&t, &[VertexSet::Nbhd(5)], 16, 1, 4).unwrap();
        assert!(ev.set.is_some());
    }

    #[test]
    fn identity_has_empty_exceptional_set() {
        let id = PermTable::identity(32);
        let ev = autstar_evidence(&id, &VertexSet::Nbhd(0), 16, 2, 4).unwrap();
        assert_eq!(ev.set, Some(vec![]));
    }
}
