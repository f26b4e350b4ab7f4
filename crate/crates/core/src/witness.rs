//! Exact witness search in views.
//!
//! In the BIT model a vertex `z >= 128` is adjacent to `u` only if `u < 128`
//! and bit `u` of `z` is set, and `[128, 2^128)` is independent. So above 127
//! the adjacency pattern of `z` is a function of its low bits. The search
//! scans `[0,128)` with masks, then enumerates the few low bits that decide
//! set membership, turns every constraint into a bit literal, and takes the
//! least matching id. Vertices named explicitly by sets or constraints are
//! checked one by one.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rado::{adjacency_mask, next_matching, DisjointPair, Vertex};
use crate::sets::{Tri128, VertexSet};
use crate::stream::{Stream, StreamProperty};
use crate::verdict::{Certificate, Rule, Verdict};
use crate::views::GraphView;

/// Symbolic patterns beyond this many positions fall back to a bounded scan.
const MAX_POSITIONS: usize = 16;
const FALLBACK_SCAN: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Vertex),
    /// Proved: no witness anywhere in ℕ.
    NoneExists,
    /// None found among decided vertices up to the bound; existence open.
    NoneWithin,
}

impl Search {
    pub fn found(self) -> Option<Vertex> {
        match self {
            Search::Found(z) => Some(z),
            _ => None,
        }
    }
}

enum Once {
    Done(Search),
    Settle(Vertex),
}

struct CSet<'a> {
    set: &'a VertexSet,
    low: Tri128,
}

impl CSet<'_> {
    fn member(&self, u: Vertex) -> Option<bool> {
        if u < 128 {
            let b = 1u128 << u;
            (self.low.known & b != 0).then_some(self.low.value & b != 0)
        } else {
            self.set.member_known(u)
        }
    }
}

enum Node<'a> {
    Base,
    Switch(Box<Node<'a>>, CSet<'a>),
    Flip(Box<Node<'a>>, CSet<'a>),
    Delete(Box<Node<'a>>, u128),
    Restrict(Box<Node<'a>>, CSet<'a>),
    Matching(Box<Node<'a>>),
}

#[derive(Clone, Copy)]
enum Lit {
    Const(bool),
    Bit(u32, bool),
    Unknown,
}

impl Lit {
    fn xor(self, b: bool) -> Lit {
        match self {
            Lit::Const(c) => Lit::Const(c ^ b),
            Lit::Bit(p, n) => Lit::Bit(p, n ^ b),
            Lit::Unknown => Lit::Unknown,
        }
    }
}

fn compile(view: &GraphView) -> Node<'_> {
    let cs = |s| CSet { set: s, low: s.low_mask() };
    match view {
        GraphView::Base => Node::Base,
        GraphView::Switch(g, s) => Node::Switch(Box::new(compile(g)), cs(s)),
        GraphView::FlipWithin(g, s) => Node::Flip(Box::new(compile(g)), cs(s)),
        GraphView::Delete(g, d) => {
            let m = d.iter().filter(|&&x| x < 128).fold(0u128, |m, &x| m | 1 << x);
            Node::Delete(Box::new(compile(g)), m)
        }
        GraphView::Restrict(g, s) => Node::Restrict(Box::new(compile(g)), cs(s)),
        GraphView::FlipMatching(g) => Node::Matching(Box::new(compile(g))),
    }
}

impl Node<'_> {
    fn adj_low(&self, u: Vertex) -> Tri128 {
        match self {
            Node::Base => Tri128::exact(adjacency_mask(u)),
            Node::Switch(g, x) => {
                let a = g.adj_low(u);
                match x.member(u) {
                    Some(true) => a.xor(x.low.not()),
                    Some(false) => a.xor(x.low),
                    None => Tri128::UNKNOWN,
                }
            }
            Node::Flip(g, s) => {
                let a = g.adj_low(u);
                match s.member(u) {
                    Some(true) => a.xor(s.low),
                    Some(false) => a,
                    None => a.xor(Tri128 { known: s.low.known & !s.low.value, value: 0 }),
                }
            }
            Node::Matching(g) => {
                let a = g.adj_low(u);
                if u ^ 1 < 128 {
                    a.xor(Tri128 { known: u128::MAX, value: 1 << (u ^ 1) })
                } else {
                    a
                }
            }
            Node::Delete(g, _) | Node::Restrict(g, _) => g.adj_low(u),
        }
    }

    fn universe_low(&self) -> Tri128 {
        match self {
            Node::Base => Tri128::TRUE,
            Node::Switch(g, _) | Node::Flip(g, _) | Node::Matching(g) => g.universe_low(),
            Node::Delete(g, m) => g.universe_low().and(Tri128::exact(!m)),
            Node::Restrict(g, s) => g.universe_low().and(s.low),
        }
    }

    fn adj_sym(&self, u: Vertex, beta: u128, positions: u128) -> Lit {
        match self {
            Node::Base => {
                if u >= 128 {
                    Lit::Const(false)
                } else if positions >> u & 1 == 1 {
                    Lit::Const(beta >> u & 1 == 1)
                } else {
                    Lit::Bit(u as u32, false)
                }
            }
            Node::Switch(g, x) => {
                let l = g.adj_sym(u, beta, positions);
                match x.member(u) {
                    Some(ux) => l.xor(ux != x.set.member_symbolic(beta)),
                    None => Lit::Unknown,
                }
            }
            Node::Flip(g, s) => {
                let l = g.adj_sym(u, beta, positions);
                if !s.set.member_symbolic(beta) {
                    return l;
                }
                match s.member(u) {
                    Some(us) => l.xor(us),
                    None => Lit::Unknown,
                }
            }
            // a symbolic z is never the partner of u; partners above 127 are checked one by one
            Node::Delete(g, _) | Node::Restrict(g, _) | Node::Matching(g) => g.adj_sym(u, beta, positions),
        }
    }

    fn universe_sym(&self, beta: u128) -> bool {
        match self {
            Node::Base => true,
            Node::Switch(g, _) | Node::Flip(g, _) | Node::Delete(g, _) | Node::Matching(g) => g.universe_sym(beta),
            Node::Restrict(g, s) => g.universe_sym(beta) && s.set.member_symbolic(beta),
        }
    }
}

/// A compiled view, reusable across many queries.
pub struct Searcher<'a> {
    view: &'a GraphView,
    node: Node<'a>,
    universe_low: Tri128,
    positions: u128,
    position_list: Vec<u32>,
    explicit: BTreeSet<Vertex>,
    streams: Vec<Stream>,
    params_low: bool,
    matching: bool,
}

impl<'a> Searcher<'a> {
    pub fn new(view: &'a GraphView) -> Self {
        let node = compile(view);
        let sets = view.sets();
        let positions = sets.iter().fold(0u128, |m, s| m | s.positions());
        let mut explicit: BTreeSet<Vertex> = view.deleted().into_iter().filter(|&x| x >= 128).collect();
        for s in &sets {
            s.explicit_high(&mut explicit);
        }
        Searcher {
            view,
            universe_low: node.universe_low(),
            node,
            positions,
            position_list: (0..128).filter(|i| positions >> i & 1 == 1).collect(),
            explicit,
            streams: view.streams(),
            params_low: sets.iter().all(|s| s.params_low()),
            matching: {
                let mut cur = Some(view);
                let mut found = false;
                while let Some(g) = cur {
                    found |= matches!(g, GraphView::FlipMatching(_));
                    cur = g.inner();
                }
                found
            },
        }
    }

    pub fn view(&self) -> &GraphView {
        self.view
    }

    fn recompile(&mut self) {
        *self = Searcher::new(self.view);
    }

    /// Is `z` a witness, judged from decided stream members only?
    fn check_known(&self, z: Vertex, u: &[Vertex], v: &[Vertex]) -> Option<bool> {
        if u.contains(&z) || v.contains(&z) {
            return Some(false);
        }
        let mut acc = self.view.in_universe_known(z);
        if acc == Some(false) {
            return acc;
        }
        for &a in u {
            acc = crate::sets::tri_and(acc, self.view.adjacent_known(z, a));
            if acc == Some(false) {
                return acc;
            }
        }
        for &b in v {
            acc = crate::sets::tri_and(acc, self.view.adjacent_known(z, b).map(|x| !x));
            if acc == Some(false) {
                return acc;
            }
        }
        acc
    }

    /// Find a witness for `(u, v)` outside `exclude`, at most `bound`.
    ///
    /// With `least`, the answer is the least witness; streams are enumerated
    /// as far as that requires. Otherwise any decided witness is returned.
    pub fn find(
        &mut self,
        u: &[Vertex],
        v: &[Vertex],
        exclude: &BTreeSet<Vertex>,
        bound: Vertex,
        least: bool,
    ) -> Result<Search> {
        loop {
            match self.search_once(u, v, exclude, bound, least)? {
                Once::Done(s) => return Ok(s),
                Once::Settle(z) => {
                    for s in &self.streams {
                        s.settle_through(z)?;
                    }
                    self.recompile();
                }
            }
        }
    }

    fn search_once(
        &self,
        u: &[Vertex],
        v: &[Vertex],
        exclude: &BTreeSet<Vertex>,
        bound: Vertex,
        least: bool,
    ) -> Result<Once> {
        let blocked = |z: Vertex| u.contains(&z) || v.contains(&z) || exclude.contains(&z);

        let mut t = self.universe_low;
        for &a in u {
            t = t.and(self.node.adj_low(a));
        }
        for &b in v {
            t = t.and(self.node.adj_low(b).not());
        }
        let ex = u
            .iter()
            .chain(v)
            .chain(exclude.range(..128))
            .filter(|&&x| x < 128)
            .fold(0u128, |m, &x| m | 1 << x);
        t = t.and(Tri128::exact(!ex));
        let in_bound = if bound >= 127 { u128::MAX } else { (1u128 << (bound + 1)) - 1 };
        let yes = t.yes() & in_bound;
        let maybe = t.maybe() & in_bound & !yes;
        if yes != 0 {
            let z = yes.trailing_zeros();
            if least && maybe & ((1u128 << z) - 1) != 0 {
                return Ok(Once::Settle(z as Vertex));
            }
            return Ok(Once::Done(Search::Found(z as Vertex)));
        }
        let mut uncertain = maybe != 0;
        if least && uncertain {
            return Ok(Once::Settle(127));
        }
        if bound < 128 {
            return Ok(Once::Done(Search::NoneWithin));
        }

        let mut best: Option<Vertex> = None;
        let mut overflow = false;
        let mut hole: BTreeSet<Vertex> = self.explicit.clone();
        hole.extend(u.iter().chain(v).copied().filter(|&x| x >= 128));
        hole.extend(exclude.range(128..).copied());
        let partners: Vec<Vertex> = if self.matching {
            u.iter().chain(v).filter(|&&x| x >= 128).map(|&x| x ^ 1).collect()
        } else {
            Vec::new()
        };
        hole.extend(partners.iter().copied());

        if self.position_list.len() > MAX_POSITIONS {
            let top = bound.min(128 + FALLBACK_SCAN);
            for z in 128..=top {
                match self.check_known(z, u, v) {
                    Some(true) if !blocked(z) => {
                        best = Some(z);
                        break;
                    }
                    None => {}
                    _ => {}
                }
            }
            return Ok(Once::Done(match best {
                Some(z) => Search::Found(z),
                None => Search::NoneWithin,
            }));
        }

        let k = self.position_list.len();
        for b in 0u32..(1u32 << k) {
            let beta = self
                .position_list
                .iter()
                .enumerate()
                .fold(0u128, |m, (i, &p)| if b >> i & 1 == 1 { m | 1 << p } else { m });
            if !self.node.universe_sym(beta) {
                continue;
            }
            let (mut req, mut forb) = (beta, self.positions & !beta);
            let mut ok = true;
            for (targets, want) in [(u, true), (v, false)] {
                for &a in targets {
                    match self.node.adj_sym(a, beta, self.positions) {
                        Lit::Const(c) => ok &= c == want,
                        Lit::Bit(p, n) => {
                            if n ^ want {
                                req |= 1 << p;
                            } else {
                                forb |= 1 << p;
                            }
                        }
                        Lit::Unknown => {
                            uncertain = true;
                            ok = false;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
            }
            if !ok || req & forb != 0 {
                continue;
            }
            let mut lo: Vertex = 128;
            loop {
                match next_matching(lo, req, forb) {
                    Some(z) if z <= bound && best.is_none_or(|x| z < x) => {
                        if hole.contains(&z) {
                            if z == Vertex::MAX {
                                overflow = true;
                                break;
                            }
                            lo = z + 1;
                            continue;
                        }
                        match self.check_known(z, u, v) {
                            Some(true) => best = Some(z),
                            Some(false) => {
                                debug_assert!(!self.streams.is_empty(), "symbolic mismatch at {z}");
                                uncertain = true;
                            }
                            None => uncertain = true,
                        }
                        break;
                    }
                    Some(z) if z > bound => {
                        overflow = true;
                        break;
                    }
                    Some(_) => break,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
        }

        let mut singles: BTreeSet<Vertex> = self.explicit.range(128..=bound).copied().collect();
        singles.extend(partners.iter().copied().filter(|&z| z <= bound));
        for f in singles {
            if blocked(f) || best.is_some_and(|x| f >= x) {
                continue;
            }
            match self.check_known(f, u, v) {
                Some(true) => best = Some(f),
                Some(false) => {}
                None => uncertain = true,
            }
        }

        if let Some(z) = best {
            if least && self.streams.iter().any(|s| s.frontier() <= z) {
                return Ok(Once::Settle(z));
            }
            return Ok(Once::Done(Search::Found(z)));
        }
        let complete = !uncertain
            && !overflow
            && self.streams.is_empty()
            && self.params_low
            && u.iter().chain(v).all(|&x| x < 128);
        Ok(Once::Done(if complete { Search::NoneExists } else { Search::NoneWithin }))
    }
}

/// Least witness for `p` in `view` that is at most `bound`.
pub fn witness_least(view: &GraphView, p: &DisjointPair, bound: Vertex) -> Result<Option<Vertex>> {
    let mut s = Searcher::new(view);
    Ok(s.find(p.u(), p.v(), &BTreeSet::new(), bound, true)?.found())
}

/// Outcome of one pair during an extension scan.
pub struct PairOutcome<'p> {
    pub u: &'p [Vertex],
    pub v: &'p [Vertex],
    pub search: Search,
}

/// Universe members below `window`, deciding stream membership as needed.
pub fn universe_below(view: &GraphView, window: Vertex) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for z in 0..window {
        if view.in_universe(z)? {
            out.push(z);
        }
    }
    Ok(out)
}

/// Visit every disjoint `(U,V)` with `U∪V ⊆ [0,window) ∩ universe` and `|U|+|V| <= d`.
///
/// Order: by size, then lexicographic vertex choice, then sign mask with U first.
pub fn scan_pairs<F>(view: &GraphView, window: Vertex, d: usize, f: F) -> Result<()>
where
    F: FnMut(PairOutcome<'_>) -> Result<ControlFlow<()>>,
{
    let universe = universe_below(view, window)?;
    scan_pairs_over(view, &universe, d, f)
}

/// Like [`scan_pairs`], with `U∪V` drawn from an explicit, sorted vertex list.
pub fn scan_pairs_over<F>(view: &GraphView, universe: &[Vertex], d: usize, mut f: F) -> Result<()>
where
    F: FnMut(PairOutcome<'_>) -> Result<ControlFlow<()>>,
{
    let mut searcher = Searcher::new(view);
    let least = searcher.streams.is_empty();
    let none = BTreeSet::new();
    let (mut u, mut v) = (Vec::with_capacity(d), Vec::with_capacity(d));
    for k in 0..=d.min(universe.len()) {
        for combo in universe.iter().copied().combinations(k) {
            for mask in 0u32..(1 << k) {
                u.clear();
                v.clear();
                for (i, &x) in combo.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        u.push(x);
                    } else {
                        v.push(x);
                    }
                }
                let search = searcher.find(&u, &v, &none, Vertex::MAX, least)?;
                if f(PairOutcome { u: &u, v: &v, search })?.is_break() {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// Symbolic reason why `(u, v)` has no witness in `view`, if one is available.
pub fn symbolic_no_witness(view: &GraphView, u: &[Vertex], _v: &[Vertex]) -> Result<Option<Rule>> {
    if let GraphView::Restrict(inner, s) = view {
        if !u.is_empty() && **inner == GraphView::Base && s.provably_independent()? {
            return Ok(Some(Rule::IndependentStream));
        }
        if let Some(x) = s.provably_isolated(inner)? {
            if u.contains(&x) {
                return Ok(Some(isolation_rule(s)?));
            }
        }
    }
    Ok(None)
}

pub(crate) fn isolation_rule(s: &VertexSet) -> Result<Rule> {
    let mut streams = Vec::new();
    s.streams(&mut streams);
    for st in streams {
        for p in st.properties()? {
            if let StreamProperty::Isolated { view, .. } = p {
                if view == GraphView::Base {
                    return Ok(Rule::IsolationTransport);
                }
            }
        }
    }
    Ok(Rule::StagedIsolation)
}

/// Extension property on a window: every small pair has a witness.
pub fn extension_evidence(view: &GraphView, window: Vertex, d: usize) -> Result<Verdict> {
    let universe = universe_below(view, window)?;
    extension_over(view, &universe, window, d)
}

/// Extension evidence with `U∪V` drawn from `universe`; `window` is the reported bound.
pub fn extension_over(view: &GraphView, universe: &[Vertex], window: Vertex, d: usize) -> Result<Verdict> {
    if d == 0 {
        return Err(Error::PreconditionViolated("extension depth must be at least 1".into()));
    }
    let claim = format!("extension property of {view}");
    let (w, dd) = (window as u64, d as u64);
    let mut refuted: Option<Verdict> = None;
    let (mut checked, mut open) = (0u64, 0u64);
    let mut first_open: Option<DisjointPair> = None;
    scan_pairs_over(view, universe, d, |o| {
        checked += 1;
        match o.search {
            Search::Found(_) => {}
            Search::NoneExists => {
                let p = DisjointPair::new(o.u.to_vec(), o.v.to_vec())?;
                refuted = Some(
                    Verdict::refuted(&claim, Certificate::split(&p), w, dd).with_rule(Rule::BitPatternExhaustion),
                );
                return Ok(ControlFlow::Break(()));
            }
            Search::NoneWithin => {
                if let Some(rule) = symbolic_no_witness(view, o.u, o.v)? {
                    let p = DisjointPair::new(o.u.to_vec(), o.v.to_vec())?;
                    refuted = Some(Verdict::refuted(&claim, Certificate::split(&p), w, dd).with_rule(rule));
                    return Ok(ControlFlow::Break(()));
                }
                open += 1;
                if first_open.is_none() {
                    first_open = DisjointPair::new(o.u.to_vec(), o.v.to_vec()).ok();
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    if let Some(r) = refuted {
        return Ok(r);
    }
    let mut verdict = Verdict::supported(claim, w, dd);
    if let Some(p) = first_open {
        verdict = verdict.with_note(format!(
            "{open} of {checked} pairs have no witness among decided vertices; first ({p})"
        ));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rado::{adjacent, witness_direct};

    fn pair(u: &[Vertex], v: &[Vertex]) -> DisjointPair {
        DisjointPair::new(u.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn matching_view_agrees_with_brute_force() {
        let m = GraphView::flip_matching(GraphView::Base);
        let mut s = Searcher::new(&m);
        for code in 0u32..729 {
            let (mut u, mut v) = (vec![], vec![]);
            for (i, x) in [0, 1, 2, 3, 130, 131].into_iter().enumerate().take(6) {
                match code / 3u32.pow(i as u32 % 6) % 3 {
                    1 => u.push(x),
                    2 => v.push(x),
                    _ => {}
                }
            }
            let brute = (0..4096u128).find(|&z| {
                !u.contains(&z) && !v.contains(&z)
                    && u.iter().all(|&a| m.adjacent(z, a).unwrap())
                    && v.iter().all(|&b| !m.adjacent(z, b).unwrap())
            });
            let got = s.find(&u, &v, &BTreeSet::new(), 4095, true).unwrap().found();
            assert_eq!(got, brute, "{u:?} {v:?}");
        }
        // 2 and 7 see 1; the partner of 132 is the least witness
        assert_eq!(witness_least(&m, &pair(&[132], &[1]), Vertex::MAX).unwrap(), Some(133));
        assert_eq!(witness_least(&GraphView::Base, &pair(&[132], &[1]), Vertex::MAX).unwrap(), None);
    }

    #[test]
    fn least_examples() {
        let b = GraphView::Base;
        assert_eq!(witness_least(&b, &pair(&[0], &[1]), 64).unwrap(), Some(5));
        assert_eq!(witness_least(&b, &pair(&[], &[]), 64).unwrap(), Some(0));
        assert_eq!(witness_least(&b, &pair(&[1], &[0]), 64).unwrap(), Some(2));
        assert_eq!(witness_least(&b, &pair(&[32], &[5]), 1 << 20).unwrap(), None);
        assert_eq!(witness_least(&b, &pair(&[32], &[5]), Vertex::MAX).unwrap(), Some(1 << 32));
    }

    fn brute(view: &GraphView, u: &[Vertex], v: &[Vertex], top: Vertex) -> Option<Vertex> {
        (0..top).find(|&z| {
            !u.contains(&z)
                && !v.contains(&z)
                && view.in_universe(z).unwrap()
                && u.iter().all(|&a| view.adjacent(z, a).unwrap())
                && v.iter().all(|&b| !view.adjacent(z, b).unwrap())
        })
    }

    #[test]
    fn agrees_with_brute_force_on_derived_views() {
        let views = vec![
            GraphView::Base,
            GraphView::switch(GraphView::Base, VertexSet::finite([0, 3])),
            GraphView::switch(GraphView::Base, VertexSet::Nbhd(1)),
            GraphView::flip_within(GraphView::Base, VertexSet::NonNbhdStrict(0)),
            GraphView::flip_within(GraphView::Base, VertexSet::All),
            GraphView::delete(GraphView::Base, [0, 2]),
            GraphView::restrict(GraphView::Base, VertexSet::witness(vec![2], vec![0]).unwrap()),
        ];
        for view in &views {
            let mut s = Searcher::new(view);
            let universe = universe_below(view, 6).unwrap();
            for k in 0..=3 {
                for combo in universe.iter().copied().combinations(k) {
                    for mask in 0..(1 << k) {
                        let u: Vec<_> = combo.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &x)| x).collect();
                        let w: Vec<_> = combo.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                        let got = s.find(&u, &w, &BTreeSet::new(), Vertex::MAX, true).unwrap();
                        let want = brute(view, &u, &w, 1 << 12);
                        match (got, want) {
                            (Search::Found(z), Some(y)) => assert_eq!(z, y, "{view} {u:?} {w:?}"),
                            (Search::Found(z), None) => {
                                assert!(z >= 1 << 12);
                                assert!(u.iter().all(|&a| view.adjacent(z, a).unwrap()));
                                assert!(w.iter().all(|&b| !view.adjacent(z, b).unwrap()));
                            }
                            (_, Some(y)) => panic!("{view} {u:?} {w:?}: missed {y}"),
                            (_, None) => {}
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustion_is_sound() {
        let iso = GraphView::switch(GraphView::Base, VertexSet::Nbhd(0));
        let mut s = Searcher::new(&iso);
        assert_eq!(s.find(&[0], &[], &BTreeSet::new(), Vertex::MAX, true).unwrap(), Search::NoneExists);
        assert!(brute(&iso, &[0], &[], 1 << 14).is_none());
    }

    #[test]
    fn extension_examples() {
        let v = extension_evidence(&GraphView::Base, 16, 3).unwrap();
        assert!(v.kind == crate::verdict::VerdictKind::SupportedUpTo && v.note.is_none());

        let two = GraphView::restrict(GraphView::Base, VertexSet::finite([0, 1]));
        let v = extension_evidence(&two, 16, 1).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.certificate.unwrap().as_split().unwrap(), pair(&[], &[0]));
        let v = extension_evidence(&two, 16, 2).unwrap();
        assert!(v.is_refuted());

        let iso = GraphView::switch(GraphView::Base, VertexSet::Nbhd(0));
        let v = extension_evidence(&iso, 8, 1).unwrap();
        assert_eq!(v.certificate.unwrap().as_split().unwrap(), pair(&[0], &[]));
    }

    #[test]
    fn least_below_direct() {
        let mut s = Searcher::new(&GraphView::Base);
        for m in 0..3u128.pow(7) {
            let p = crate::rado::decode_pair(m);
            let z = s.find(p.u(), p.v(), &BTreeSet::new(), Vertex::MAX, true).unwrap().found().unwrap();
            assert!(p.is_witness(z));
            assert!(z <= witness_direct(&p).unwrap());
            assert!(p.u().iter().all(|&a| adjacent(z, a)));
        }
    }
}
