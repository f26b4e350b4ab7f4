//! Window-bounded membership evidence for the overgroups of Aut(R).

mod filter;
mod hyper;
mod report;

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::Result;
use crate::rado::{adjacent, Vertex};
use crate::sets::VertexSet;
use crate::table::PermTable;
use crate::verdict::{Certificate, Rule, Verdict};
use crate::views::{odd_parity, GraphView};

pub use filter::{aut_filter_evidence, filter_member, image_meets_neighbourhood};
pub use hyper::{
    autstar_evidence, copy_evidence, edge_image, faut_evidence, image_set, isolated_vertex_cert, SetEvidence,
};
pub use report::{classify, member, GrowthPoint, MembershipReport, GROUPS};

/// What a table is known to be, read off its views and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Automorphism,
    Anti,
    /// Isomorphism from the base graph onto its switching over `x`, or back if `!forward`.
    Switch { x: VertexSet, forward: bool },
    /// Isomorphism from the base graph onto the graph complemented inside `s`.
    Flip { s: VertexSet },
    Finitary { moved: Vec<Vertex> },
    /// Isomorphism from the base graph onto the graph with the pairs {2k, 2k+1} flipped, or back.
    Matching { forward: bool },
    /// Identity on R(v), E onto D, A∪D onto A∪E.
    BlockMap { v: Vertex },
    Unknown,
}

pub fn shape_of(g: &PermTable) -> Shape {
    use GraphView::*;
    match g.provenance.construction.as_str() {
        "finitary" => {
            let cycles = crate::constructions::finitary_cycles(&g.provenance).unwrap_or_default();
            let moved: Vec<Vertex> = cycles.into_iter().flatten().sorted().collect();
            return if moved.is_empty() { Shape::Automorphism } else { Shape::Finitary { moved } };
        }
        "g6" => {
            if let Some(v) = g.provenance.param("v").and_then(|s| s.parse().ok()) {
                return Shape::BlockMap { v };
            }
        }
        _ => {}
    }
    let base = |b: &GraphView| *b == Base;
    match (&g.source, &g.target) {
        (Base, Base) => Shape::Automorphism,
        (Base, FlipWithin(b, VertexSet::All)) | (FlipWithin(b, VertexSet::All), Base) if base(b) => Shape::Anti,
        (Base, Switch(b, x)) if base(b) => Shape::Switch { x: x.clone(), forward: true },
        (Switch(b, x), Base) if base(b) => Shape::Switch { x: x.clone(), forward: false },
        (Base, FlipWithin(b, s)) if base(b) => Shape::Flip { s: s.clone() },
        (Base, FlipMatching(b)) if base(b) => Shape::Matching { forward: true },
        (FlipMatching(b), Base) if base(b) => Shape::Matching { forward: false },
        _ => Shape::Unknown,
    }
}

/// `g⁻¹(y)` when it provably equals `y` itself.
fn pullback(g: &PermTable, y: &VertexSet) -> Option<VertexSet> {
    let fixed = |v: Vertex| g.image(v) == Some(v);
    let keeps_nbhd = |v: Vertex| {
        fixed(v)
            && match &g.target {
                GraphView::FlipWithin(_, s) => s.member_known(v) == Some(false),
                GraphView::Base => true,
                _ => false,
            }
    };
    let ok = match y {
        VertexSet::All => true,
        VertexSet::Finite(xs) => xs.iter().all(|&x| fixed(x)),
        VertexSet::Nbhd(v) | VertexSet::NonNbhdStrict(v) => keeps_nbhd(*v),
        _ => false,
    };
    ok.then(|| y.clone())
}

/// Exact membership test for C(g) that needs no table entries.
#[derive(Clone, Debug)]
pub enum ChangeRule {
    Nothing,
    Everything,
    /// Pairs split by the set.
    Cut(VertexSet),
    /// Pairs inside the set.
    Inside(VertexSet),
}

impl ChangeRule {
    pub fn changed(&self, a: Vertex, b: Vertex) -> Result<bool> {
        if a == b {
            return Ok(false);
        }
        Ok(match self {
            ChangeRule::Nothing => false,
            ChangeRule::Everything => true,
            ChangeRule::Cut(x) => x.member(a)? != x.member(b)?,
            ChangeRule::Inside(s) => s.member(a)? && s.member(b)?,
        })
    }
}

/// For isomorphisms onto a switched or flipped base graph, C(g) is the set of
/// altered pairs pulled back along g.
pub fn change_rule(g: &PermTable) -> Option<ChangeRule> {
    match shape_of(g) {
        Shape::Automorphism => Some(ChangeRule::Nothing),
        Shape::Anti => Some(ChangeRule::Everything),
        Shape::Switch { x, forward: false } => Some(ChangeRule::Cut(x)),
        Shape::Switch { x, forward: true } => pullback(g, &x).map(ChangeRule::Cut),
        Shape::Flip { s } => pullback(g, &s).map(ChangeRule::Inside),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangedPairSet {
    pub window: Vertex,
    pub pairs: BTreeSet<(Vertex, Vertex)>,
}

fn table_changed(g: &PermTable, a: Vertex, b: Vertex) -> Option<bool> {
    Some(adjacent(a, b) != adjacent(g.image(a)?, g.image(b)?))
}

/// C(g) ∩ [0,window)², from the table.
pub fn changed_pairs(g: &PermTable, window: Vertex) -> Result<ChangedPairSet> {
    g.require(window)?;
    let mut pairs = BTreeSet::new();
    for b in 0..window {
        for a in 0..b {
            if table_changed(g, a, b) == Some(true) {
                pairs.insert((a, b));
            }
        }
    }
    Ok(ChangedPairSet { window, pairs })
}

/// The w < window whose adjacency to v is changed by g.
///
/// Uses the exact change rule when the shape provides one, so the window
/// may exceed the materialized table.
pub fn changes_at(g: &PermTable, v: Vertex, window: Vertex) -> Result<Vec<Vertex>> {
    if let Some(rule) = change_rule(g) {
        let mut out = Vec::new();
        for w in 0..window {
            if rule.changed(v, w)? {
                out.push(w);
            }
        }
        return Ok(out);
    }
    changes_at_table(g, v, window)
}

/// Like [`changes_at`], from table entries only.
pub fn changes_at_table(g: &PermTable, v: Vertex, window: Vertex) -> Result<Vec<Vertex>> {
    g.require(window.max(v + 1))?;
    Ok((0..window).filter(|&w| w != v && table_changed(g, v, w) == Some(true)).collect())
}

/// Composite `v ↦ h(g(v))` on the vertices where both tables are defined.
pub fn compose(g: &PermTable, h: &PermTable, window: Vertex) -> PermTable {
    let mut t = PermTable::new(
        crate::table::Provenance::new("composite"),
        g.source.clone(),
        h.target.clone(),
    );
    for v in 0..window {
        if let Some(w) = g.image(v).and_then(|x| h.image(x)) {
            t.pairs.insert(v, w);
        }
    }
    t
}

/// With vertex images written on the right, C(g⁻¹) = C(g)^g and
/// C(gh) ⊆ C(g) ∪ C(h)^{g⁻¹}. Checked on pairs inside the window where
/// every term is computable.
pub fn cg_identities_check(g: &PermTable, h: &PermTable, window: Vertex) -> Result<Verdict> {
    let claim = "C(g^-1) = C(g)^g and C(gh) ⊆ C(g) ∪ C(h)^(g^-1)";
    let ginv = g.inverse();
    let gh = compose(g, h, window);
    let mut checked = 0u64;
    for b in 0..window {
        for a in 0..b {
            // {a,b} ∈ C(g⁻¹) iff {g⁻¹a, g⁻¹b} ∈ C(g)
            if let (Some(lhs), Some(pa), Some(pb)) = (table_changed(&ginv, a, b), ginv.image(a), ginv.image(b)) {
                if let Some(rhs) = table_changed(g, pa, pb) {
                    checked += 1;
                    if lhs != rhs {
                        return Ok(Verdict::refuted(claim, Certificate::Pair { a, b }, window as u64, 0));
                    }
                }
            }
            if table_changed(&gh, a, b) == Some(true) {
                let in_g = table_changed(g, a, b);
                let in_h = match (g.image(a), g.image(b)) {
                    (Some(x), Some(y)) => table_changed(h, x, y),
                    _ => None,
                };
                if let (Some(x), Some(y)) = (in_g, in_h) {
                    checked += 1;
                    if !x && !y {
                        return Ok(Verdict::refuted(claim, Certificate::Pair { a, b }, window as u64, 0));
                    }
                }
            }
        }
    }
    Ok(Verdict::settled(claim, Rule::ChangeSetCalculus, window as u64, 0)
        .with_note(format!("{checked} pair checks")))
}

/// Does g keep the parity of the number of edges on every k-set inside the materialized window?
pub fn parity_preservation(g: &PermTable, window: Vertex, k: usize) -> Result<Verdict> {
    let eff = g.covered_within(window);
    let claim = format!("preserves {k}-parity");
    let mut img = Vec::with_capacity(k);
    for s in (0..eff).combinations(k) {
        img.clear();
        img.extend(s.iter().map(|&v| g.image(v).expect("covered")));
        if odd_parity(&GraphView::Base, &s)? != odd_parity(&GraphView::Base, &img)? {
            return Ok(Verdict::refuted(claim, Certificate::Set { vertices: s }, eff as u64, k as u64));
        }
    }
    let v = Verdict::supported(claim, eff as u64, k as u64);
    Ok(if eff < window {
        v.with_note(format!("table covers [0,{eff}) of the requested window {window}"))
    } else {
        v
    })
}

/// Changed-pair counts on `[0,w)` for each `w`, and the largest per-vertex count.
pub fn growth(g: &PermTable, windows: &[Vertex]) -> Result<Vec<(Vertex, usize, usize)>> {
    let rule = change_rule(g);
    let mut out = Vec::new();
    for &w in windows {
        let w = if rule.is_some() { w } else { w.min(g.covered_within(w)) };
        let mut per = vec![0usize; w as usize];
        let mut total = 0;
        for b in 0..w {
            for a in 0..b {
                let c = match &rule {
                    Some(r) => r.changed(a, b)?,
                    None => table_changed(g, a, b).unwrap_or(false),
                };
                if c {
                    total += 1;
                    per[a as usize] += 1;
                    per[b as usize] += 1;
                }
            }
        }
        out.push((w, total, per.into_iter().max().unwrap_or(0)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_finitary;

    #[test]
    fn transposition_changes() {
        let t = build_finitary(&[vec![0, 1]]).unwrap();
        assert_eq!(changes_at(&t, 0, 8).unwrap(), vec![2, 5, 6]);
        let c = changed_pairs(&t, 8).unwrap();
        for b in 2..8 {
            for a in 0..2 {
                assert_eq!(c.pairs.contains(&(a, b)), adjacent(0, b) != adjacent(1, b));
            }
        }
        assert!(changed_pairs(&PermTable::identity(16), 16).unwrap().pairs.is_empty());
    }

    #[test]
    fn parity_of_transposition() {
        let t = build_finitary(&[vec![0, 1]]).unwrap();
        assert!(parity_preservation(&t, 8, 3).unwrap().is_refuted());
        assert!(!parity_preservation(&PermTable::identity(10), 10, 4).unwrap().is_refuted());
    }

    fn perms(n: usize) -> Vec<Vec<usize>> {
        (0..n).permutations(n).collect()
    }

    /// Brute-force both identities under right actions and the literal
    /// C(g⁻¹) = C(g)^{g⁻¹} reading, over S_4 acting on [0,4) inside [0,8).
    #[test]
    fn change_set_conventions() {
        let ch = |p: &[usize], a: usize, b: usize| {
            let img = |x: usize| if x < p.len() { p[x] } else { x };
            adjacent(a as Vertex, b as Vertex) != adjacent(img(a) as Vertex, img(b) as Vertex)
        };
        let inv = |p: &[usize]| {
            let mut q = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x] = i;
            }
            q
        };
        let mut literal_fails = false;
        for p in perms(4) {
            let q = inv(&p);
            let img = |x: usize| if x < 4 { p[x] } else { x };
            let pre = |x: usize| if x < 4 { q[x] } else { x };
            for b in 0..8 {
                for a in 0..b {
                    assert_eq!(ch(&q, a, b), ch(&p, pre(a), pre(b)));
                    if ch(&q, a, b) != ch(&p, img(a), img(b)) {
                        literal_fails = true;
                    }
                }
            }
        }
        assert!(literal_fails);
    }
}
