//! Claims a bundle makes about itself, and how to run them.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{g4_blocks, g5, switching_repair, Bundle};
use crate::classify::{
    aut_filter_evidence, autstar_evidence, changes_at, changes_at_table, copy_evidence, faut_evidence, image_set,
    isolated_vertex_cert, parity_preservation, shape_of, Shape,
};
use crate::error::{Error, Result};
use crate::rado::{adjacent, DisjointPair, Vertex};
use crate::sets::VertexSet;
use crate::table::PermTable;
use crate::verdict::{Certificate, Rule, Verdict, VerdictKind};
use crate::views::GraphView;
use crate::witness::{universe_below, witness_least, Search, Searcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// Not refuted.
    Positive,
    Refuted,
    Settled,
}

impl Expect {
    pub fn accepts(self, v: &Verdict) -> bool {
        match self {
            Expect::Positive => v.kind != VerdictKind::Refuted,
            Expect::Refuted => v.kind == VerdictKind::Refuted,
            Expect::Settled => v.kind == VerdictKind::ExactlySettled,
        }
    }
}

/// A classifier call over names in the bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimCall {
    ChangesAtMost { table: String, except: Vertex, max: usize, window: Vertex },
    ChangesGrow { table: String, vertices: Vec<Vertex>, windows: Vec<Vertex> },
    Parity { table: String, k: usize, window: Vertex },
    AutFilter { table: String, window: Vertex, k_max: usize },
    ImageDisjoint { table: String, vertices: Vec<Vertex>, window: Vertex },
    Inversion { table: String, window: Vertex },
    Permutation { table: String, window: Vertex },
    Extension { view: String, window: Vertex, d: usize },
    Copy { view: String, set: String, window: Vertex, d: usize },
    Isolated { view: String, set: String, vertex: Vertex, window: Vertex },
    CaseSplit { p: Vertex, q: Vertex, window: Vertex, d: usize },
    BlockForms { p: Vertex, q: Vertex, lo: Vertex, hi: Vertex },
    ConditionOne { stages: usize },
    Freshness { stages: usize },
    AvoidFinite { table: String, s: Vertex, stages: usize, window: Vertex, d: usize },
    AutStar { table: String, set: String, window: Vertex, d: usize, s_max: Vertex },
    Faut { table: String, sets: Vec<String>, window: Vertex, d: usize, s_max: Vertex },
    Repair { set: String, depth: usize, window: Vertex },
    Member { table: String, group: String, window: Vertex, d: usize, k_max: usize, s_max: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub call: ClaimCall,
    pub expect: Expect,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub bundle: String,
    pub id: String,
    pub expect: Expect,
    pub verdict: Verdict,
    pub pass: bool,
    /// Whether a refutation certificate survived an independent re-check, when one applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recheck: Option<bool>,
}

pub fn run_claims(b: &Bundle) -> Result<Vec<ClaimResult>> {
    b.claims.iter().map(|c| run_claim(b, c)).collect()
}

pub fn run_claim(b: &Bundle, c: &Claim) -> Result<ClaimResult> {
    let verdict = evaluate(b, &c.call)?;
    let recheck = if verdict.is_refuted() { recheck(b, &c.call, &verdict)? } else { None };
    let pass = c.expect.accepts(&verdict) && recheck != Some(false);
    Ok(ClaimResult { bundle: b.id.clone(), id: c.id.clone(), expect: c.expect, verdict, pass, recheck })
}

fn evaluate(b: &Bundle, call: &ClaimCall) -> Result<Verdict> {
    use ClaimCall::*;
    match call {
        ChangesAtMost { table, except, max, window } => changes_at_most(b.table(table)?, *except, *max, *window),
        ChangesGrow { table, vertices, windows } => changes_grow(b.table(table)?, vertices, windows),
        Parity { table, k, window } => parity_preservation(b.table(table)?, *window, *k),
        AutFilter { table, window, k_max } => aut_filter_evidence(b.table(table)?, *window, *k_max),
        ImageDisjoint { table, vertices, window } => image_disjoint(b.table(table)?, vertices, *window),
        Inversion { table, window } => inversion(b.table(table)?, *window),
        Permutation { table, window } => permutation(b.table(table)?, *window),
        Extension { view, window, d } => crate::witness::extension_evidence(b.view(view)?, *window, *d),
        Copy { view, set, window, d } => copy_evidence(b.view(view)?, b.set(set)?, *window, *d),
        Isolated { view, set, vertex, window } => isolated_vertex_cert(b.view(view)?, b.set(set)?, *vertex, *window),
        CaseSplit { p, q, window, d } => case_split(*p, *q, *window, *d),
        BlockForms { p, q, lo, hi } => block_forms(*p, *q, *lo, *hi),
        ConditionOne { stages } => condition_one(*stages),
        Freshness { stages } => freshness(*stages),
        AvoidFinite { table, s, stages, window, d } => avoid_finite(b.table(table)?, *s, *stages, *window, *d),
        AutStar { table, set, window, d, s_max } => Ok(autstar_evidence(b.table(table)?, b.set(set)?, *window, *d, *s_max)?.verdict),
        Faut { table, sets, window, d, s_max } => {
            let edges = sets.iter().map(|s| b.set(s).cloned()).collect::<Result<Vec<_>>>()?;
            Ok(faut_evidence(b.table(table)?, &edges, *window, *d, *s_max)?.verdict)
        }
        Member { table, group, window, d, k_max, s_max } => {
            crate::classify::member(b.table(table)?, group, *window, *d, *k_max, *s_max)
        }
        Repair { set, depth, window } => {
            let r = switching_repair(b.set(set)?, *depth, *window)?;
            Ok(r.verdict.with_note(format!("removed {{{}}}", crate::rado::join(&r.removed))))
        }
    }
}

/// Independent re-validation of a refutation certificate by adjacency queries.
fn recheck(b: &Bundle, call: &ClaimCall, v: &Verdict) -> Result<Option<bool>> {
    use ClaimCall::*;
    let Some(cert) = &v.certificate else { return Ok(Some(false)) };
    Ok(match (call, cert) {
        (Member { table, .. }, Certificate::Set { vertices }) | (Parity { table, .. }, Certificate::Set { vertices }) if vertices.len() >= 3 => {
            let g = b.table(table)?;
            let img: Option<Vec<Vertex>> = vertices.iter().map(|&x| g.image(x)).collect();
            let odd = |s: &[Vertex]| s.iter().tuple_combinations().filter(|(&a, &c)| adjacent(a, c)).count() % 2;
            img.map(|i| odd(vertices) != odd(&i))
        }
        (Member { table, .. }, Certificate::Pair { a, b: c }) => {
            let g = b.table(table)?;
            match (g.image(*a), g.image(*c)) {
                (Some(x), Some(y)) => Some(adjacent(*a, *c) != adjacent(x, y)),
                _ => None,
            }
        }
        (Inversion { table, .. }, Certificate::Pair { a, b: c }) | (ChangesAtMost { table, .. }, Certificate::Pair { a, b: c }) => {
            let g = b.table(table)?;
            match (g.image(*a), g.image(*c)) {
                (Some(x), Some(y)) => Some(matches!(call, Inversion { .. }) == (adjacent(*a, *c) == adjacent(x, y))),
                _ => None,
            }
        }
        (AutFilter { table, window, .. }, Certificate::Vertex { vertex }) => {
            let g = b.table(table)?;
            crate::classify::image_meets_neighbourhood(g, *vertex, g.covered_within(*window)).map(|m| m.is_empty())
        }
        (Isolated { view, vertex, .. }, Certificate::Pair { a, b: c }) => {
            let view = b.view(view)?;
            Some((a == vertex || c == vertex) && view.adjacent(*a, *c)?)
        }
        (Copy { view, set, window, .. }, Certificate::Split { u, v: vv }) => {
            let view = GraphView::restrict(b.view(view)?.clone(), b.set(set)?.clone());
            let p = DisjointPair::new(u.clone(), vv.clone())?;
            let mut ok = true;
            for z in 0..*window {
                if view.in_universe_known(z) == Some(true)
                    && !p.contains(z)
                    && u.iter().all(|&a| view.adjacent(z, a).unwrap_or(false))
                    && vv.iter().all(|&c| !view.adjacent(z, c).unwrap_or(true))
                {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        }
        (AvoidFinite { table, s, stages, window, .. }, Certificate::Split { u, v: vv }) if u.len() == 1 && vv.is_empty() => {
            let g = b.table(table)?;
            let src = g5::source();
            let run = src.run();
            let hit = (1..=*stages).find(|&n| run.triple(n).map(|t| t.1) == g.preimage(u[0]));
            match hit {
                Some(n) => {
                    let e = g5::edge(n);
                    let misses = (0..*s).try_fold(true, |acc, z| Ok::<_, Error>(acc && !e.member(z)?))?;
                    let bn = run.triple(n).expect("triple exists").1;
                    let iso = isolated_vertex_cert(&g5::switched_view(), &e, bn, *window)?;
                    Some(misses && iso.kind == VerdictKind::ExactlySettled)
                }
                None => Some(false),
            }
        }
        _ => None,
    })
}

fn changes_at_most(g: &PermTable, except: Vertex, max: usize, window: Vertex) -> Result<Verdict> {
    let claim = format!("at most {max} changed adjacencies at each vertex other than {except}");
    let covered = g.covered_within(window);
    for w in (0..window).filter(|&w| w != except) {
        let by_rule = changes_at(g, w, window)?;
        if by_rule.len() > max {
            return Ok(Verdict::refuted(claim, Certificate::Pair { a: w, b: by_rule[max] }, window as u64, 0));
        }
        if w < covered {
            let by_table = changes_at_table(g, w, covered)?;
            let rule_part: Vec<Vertex> = by_rule.iter().copied().filter(|&x| x < covered).collect();
            if by_table != rule_part {
                return Err(Error::PreconditionViolated(format!("table and change rule disagree at {w}")));
            }
        }
    }
    Ok(Verdict::supported(claim, window as u64, 0).with_note(format!("table entries agree on [0,{covered})")))
}

fn changes_grow(g: &PermTable, vertices: &[Vertex], windows: &[Vertex]) -> Result<Verdict> {
    let claim = "changed adjacencies at each listed vertex grow with the window";
    let top = windows.iter().copied().max().unwrap_or(0);
    let mut rows = Vec::new();
    for &v in vertices {
        let counts = windows.iter().map(|&w| Ok(changes_at(g, v, w)?.len())).collect::<Result<Vec<_>>>()?;
        if counts.windows(2).any(|p| p[0] >= p[1]) {
            return Ok(Verdict::refuted(claim, Certificate::Vertex { vertex: v }, top as u64, 0)
                .with_note(format!("counts {counts:?} on windows {windows:?}")));
        }
        rows.push(format!("{v}: {}", counts.iter().join("/")));
    }
    Ok(Verdict::supported(claim, top as u64, 0).with_note(rows.join("; ")))
}

fn image_disjoint(g: &PermTable, vertices: &[Vertex], window: Vertex) -> Result<Verdict> {
    let claim = format!("R(v)^g ∩ R(v^g) is empty for v in {{{}}}", crate::rado::join(vertices));
    let eff = g.covered_within(window);
    for &v in vertices {
        let hit = crate::classify::image_meets_neighbourhood(g, v, eff)
            .ok_or(Error::NotMaterialized { window, covered: eff })?;
        if let Some(&y) = hit.first() {
            return Ok(Verdict::refuted(claim, Certificate::Pair { a: v, b: y }, eff as u64, 0));
        }
    }
    let rule = match shape_of(g) {
        Shape::Anti => Some(Rule::AntiAutomorphismDisjoint),
        Shape::Switch { x: VertexSet::Finite(xs), forward: true }
            if xs.len() == 1 && vertices.iter().all(|&v| v == xs[0] && g.image(v) == Some(v)) =>
        {
            Some(Rule::SwitchAtFixedVertex)
        }
        _ => None,
    };
    Ok(match rule {
        Some(r) => Verdict::settled(claim, r, eff as u64, 0).with_note(format!("also checked on [0,{eff})")),
        None => Verdict::supported(claim, eff as u64, 0),
    })
}

fn inversion(g: &PermTable, window: Vertex) -> Result<Verdict> {
    let eff = g.covered_within(window);
    let claim = "g inverts every adjacency";
    for c in 0..eff {
        for a in 0..c {
            if adjacent(a, c) == adjacent(g.image(a).expect("covered"), g.image(c).expect("covered")) {
                return Ok(Verdict::refuted(claim, Certificate::Pair { a, b: c }, eff as u64, 0));
            }
        }
    }
    let v = Verdict::supported(claim, eff as u64, 0);
    Ok(if eff < window { v.with_note(format!("table covers [0,{eff}) of {window}")) } else { v })
}

fn permutation(g: &PermTable, window: Vertex) -> Result<Verdict> {
    let claim = format!("g is a bijection on a region containing [0,{window})");
    let mut seen = BTreeSet::new();
    for (&a, &b) in &g.pairs {
        if !seen.insert(b) {
            return Ok(Verdict::refuted(claim, Certificate::Pair { a, b }, window as u64, 0));
        }
    }
    if let Some(x) = (0..window).find(|&x| g.image(x).is_none() || g.preimage(x).is_none()) {
        return Ok(Verdict::refuted(claim, Certificate::Vertex { vertex: x }, window as u64, 0));
    }
    Ok(Verdict::supported(claim, window as u64, 0))
}

/// Claim 1's strategy: with q in U, a witness for (U, V∪{p}) lies in C; with q in V,
/// a witness for (U∪{p}, V) lies in B. Pairs without q get q added to V.
fn case_split(p: Vertex, q: Vertex, window: Vertex, d: usize) -> Result<Verdict> {
    let (_, b, c, _, e) = g4_blocks(p, q);
    let claim = "the case-split witness lies in E, in the predicted block, and agrees with blind search";
    let inside = GraphView::restrict(GraphView::Base, e.clone());
    let universe = universe_below(&inside, window)?;
    let mut blind = Searcher::new(&inside);
    let none = BTreeSet::new();
    let mut checked = 0u64;
    for k in 0..=d {
        for combo in universe.iter().copied().combinations(k) {
            for mask in 0u32..(1 << k) {
                let u: Vec<Vertex> = combo.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &x)| x).collect();
                let mut v: Vec<Vertex> = combo.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                if !u.contains(&q) && !v.contains(&q) {
                    v.push(q);
                }
                let (pair, block) = if u.contains(&q) {
                    (DisjointPair::new(u.clone(), [v.clone(), vec![p]].concat())?, &c)
                } else {
                    (DisjointPair::new([u.clone(), vec![p]].concat(), v.clone())?, &b)
                };
                let z = witness_least(&GraphView::Base, &pair, Vertex::MAX)?;
                let orig = DisjointPair::new(u.clone(), v.clone())?;
                let ok = match z {
                    Some(z) => block.member(z)? && e.member(z)? && orig.is_witness(z),
                    None => false,
                };
                let found = matches!(blind.find(&u, &v, &none, Vertex::MAX, true)?, Search::Found(_));
                if !ok || !found {
                    return Ok(Verdict::refuted(claim, Certificate::split(&orig), window as u64, d as u64));
                }
                checked += 1;
            }
        }
    }
    Ok(Verdict::supported(claim, window as u64, d as u64).with_note(format!("{checked} pairs")))
}

/// Block of n from direct adjacency, from the set specs, and from bits p and q of n.
fn block_forms(p: Vertex, q: Vertex, lo: Vertex, hi: Vertex) -> Result<Verdict> {
    let (a, b, c, d, _) = g4_blocks(p, q);
    let claim = format!("A/B/C/D are read off bits {p} and {q} above {}", p.max(q));
    for n in lo.max(p.max(q) + 1)..hi {
        let brute = (adjacent(n, p), adjacent(n, q));
        let bits = ((n >> p) & 1 == 1, (n >> q) & 1 == 1);
        let block = match (a.member(n)?, b.member(n)?, c.member(n)?, d.member(n)?) {
            (true, false, false, false) => (true, true),
            (false, true, false, false) => (true, false),
            (false, false, true, false) => (false, true),
            (false, false, false, true) => (false, false),
            _ => return Ok(Verdict::refuted(&claim, Certificate::Vertex { vertex: n }, hi as u64, 0)),
        };
        if brute != bits || block != bits {
            return Ok(Verdict::refuted(claim, Certificate::Vertex { vertex: n }, hi as u64, 0));
        }
    }
    Ok(Verdict::supported(claim, hi as u64, 0))
}

fn condition_one(stages: usize) -> Result<Verdict> {
    let src = g5::source();
    let run = src.run();
    let triples = run.log[..stages.min(run.log.len())]
        .iter()
        .filter(|r| matches!(r.added, g5::Added::Triple { .. }))
        .count();
    let claim = format!("a_n ≁ b_k and c_n ∼ b_k for k ≤ n ≤ {triples}");
    for n in 0..triples {
        for k in 0..=n {
            if adjacent(run.a[n], run.b[k]) || !adjacent(run.c[n], run.b[k]) {
                return Ok(Verdict::refuted(claim, Certificate::Pair { a: run.a[n], b: run.b[k] }, triples as u64, 0));
            }
        }
    }
    Ok(Verdict::settled(claim, Rule::StagedConstraints, triples as u64, 0).with_note("every materialized index checked"))
}

fn freshness(stages: usize) -> Result<Verdict> {
    let src = g5::source();
    let run = src.run();
    let claim = "each added vertex was unused and A, B, C, D are pairwise disjoint";
    let mut used = BTreeSet::new();
    let mut rises = true;
    let mut last = None;
    for r in &run.log[..stages.min(run.log.len())] {
        let added: Vec<Vertex> = match &r.added {
            g5::Added::Triple { a, b, c, d, .. } => vec![*a, *b, *c, *d],
            g5::Added::Routed { routed, d } => routed.iter().copied().chain([*d]).collect(),
        };
        for z in added {
            if !used.insert(z) {
                return Ok(Verdict::refuted(claim, Certificate::Vertex { vertex: z }, stages as u64, 0));
            }
            rises &= last.is_none_or(|l| z > l);
            last = Some(z);
        }
    }
    let v = Verdict::supported(claim, stages as u64, 0);
    Ok(if rises { v } else { v.with_note("choices take the least unused vertex, so the sequence is not increasing") })
}

/// For S = [0,s): the first E_n missing S, and the isolated vertex of (E_n∖S)g.
fn avoid_finite(g: &PermTable, s: Vertex, stages: usize, window: Vertex, d: usize) -> Result<Verdict> {
    let claim = format!("[0,{s}) is a global exceptional set for g");
    let sset = VertexSet::finite(0..s);
    for n in 1..=stages {
        let e = g5::edge(n);
        let mut meets = false;
        for z in 0..s {
            if e.member(z)? {
                meets = true;
                break;
            }
        }
        if meets {
            continue;
        }
        let img = image_set(g, &VertexSet::difference(e, sset.clone()), false)?;
        let v = copy_evidence(&GraphView::Base, &img, window, d)?;
        return Ok(v.with_claim(claim).with_note(format!("E_{n} misses [0,{s}); its image under g is not an edge")));
    }
    Ok(Verdict::supported(claim, window as u64, d as u64).with_note(format!("no E_n with n <= {stages} misses [0,{s})")))
}
