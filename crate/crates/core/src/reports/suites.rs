//! The invariants each `verify` suite checks.

use std::ops::ControlFlow;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Check;
use crate::classify::{
    aut_filter_evidence, cg_identities_check, changes_at, classify, parity_preservation,
};
use crate::constructions::{build, build_finitary, run_claims, BuildArgs, Params, NAMES};
use crate::error::Result;
use crate::iso::{build_iso, resume};
use crate::rado::{adjacent, enumerate_pair, witness_direct, DisjointPair, Vertex};
use crate::sets::VertexSet;
use crate::table::{PermTable, Provenance};
use crate::verdict::{Verdict, VerdictKind};
use crate::views::{odd_parity, GraphView};
use crate::witness::{scan_pairs, witness_least, Search};

/// Seed for every sampled check, so reports do not change between runs.
const SEED: u64 = 0x5eed;

fn subset(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i as Vertex).collect()
}

fn switch(x: &[Vertex]) -> GraphView {
    GraphView::switch(GraphView::Base, VertexSet::finite(x.iter().copied()))
}

fn complement() -> GraphView {
    GraphView::flip_within(GraphView::Base, VertexSet::All)
}

// ---- core

/// Result of scanning every small pair on a window of R.
#[derive(Clone, Debug)]
pub struct ExtensionScan {
    pub pairs: u64,
    /// Pairs whose least witness exceeded the closed-form one, or was not a witness.
    pub bad: Vec<DisjointPair>,
    pub verdict: Verdict,
}

/// Every `(U,V)` with `|U|+|V| <= d` inside the window has a witness, and the least
/// one found is never above `2^m + Σ 2^u`.
pub fn extension_scan(window: Vertex, d: usize) -> Result<ExtensionScan> {
    let base = GraphView::Base;
    let (mut pairs, mut bad, mut missing) = (0u64, Vec::new(), None);
    scan_pairs(&base, window, d, |o| {
        pairs += 1;
        let p = DisjointPair::new(o.u.to_vec(), o.v.to_vec())?;
        match o.search {
            Search::Found(z) => {
                let ok = p.is_witness(z) && witness_direct(&p).map_or(true, |y| z <= y);
                if !ok && bad.len() < 8 {
                    bad.push(p);
                }
            }
            _ => {
                missing = Some(p);
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    let claim = "extension property of base";
    let verdict = match missing {
        Some(p) => Verdict::refuted(claim, crate::verdict::Certificate::split(&p), window as u64, d as u64),
        None => Verdict::supported(claim, window as u64, d as u64),
    };
    Ok(ExtensionScan { pairs, bad, verdict })
}

pub fn check_core(p: &Params) -> Result<Vec<Check>> {
    let s = "core";
    let mut out = Vec::new();

    let asym = (0..256u128).flat_map(|u| (0..256u128).map(move |v| (u, v))).find(|&(u, v)| {
        adjacent(u, v) != adjacent(v, u) || (u == v && adjacent(u, v))
    });
    out.push(Check::new(s, "adjacency-symmetric-irreflexive", asym.is_none(), match asym {
        Some((u, v)) => format!("fails at ({u},{v})"),
        None => "u,v < 256".into(),
    }));

    // all disjoint pairs over [0,10] with at most 5 vertices
    let (mut n, mut fail) = (0u64, None);
    for k in 0..=5 {
        for combo in (0..=10u128).combinations(k) {
            for mask in 0u32..(1 << k) {
                let (u, v): (Vec<_>, Vec<_>) = combo.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 0);
                let dp = DisjointPair::new(u.into_iter().map(|x| *x.1).collect(), v.into_iter().map(|x| *x.1).collect())?;
                n += 1;
                let z = witness_direct(&dp)?;
                let least = witness_least(&GraphView::Base, &dp, 1 << 12)?;
                let ok = dp.is_witness(z)
                    && match least {
                        Some(y) => y <= z && dp.is_witness(y),
                        None => z > 1 << 12,
                    };
                if !ok && fail.is_none() {
                    fail = Some(dp);
                }
            }
        }
    }
    out.push(Check::new(s, "witness-soundness", fail.is_none(), match fail {
        Some(dp) => format!("fails at ({dp})"),
        None => format!("{n} pairs over [0,10]"),
    }));

    let scan = extension_scan(p.window, p.depth)?;
    let ok = scan.bad.is_empty() && scan.verdict.kind != VerdictKind::Refuted;
    let detail = if scan.bad.is_empty() {
        format!("{} pairs; least witness never above the closed form", scan.pairs)
    } else {
        format!("least witness above the closed form at ({})", scan.bad[0])
    };
    out.push(Check::new(s, "extension-property", ok, detail).with_verdict(scan.verdict));

    let mut hits = [0u32; 81];
    for i in 0..1_000_000u128 {
        let m = crate::rado::encode_pair(&enumerate_pair(i));
        if m < 81 {
            hits[m as usize] += 1;
        }
    }
    let least = hits.iter().copied().min().unwrap_or(0);
    out.push(Check::new(s, "enumerator-recurrence", least >= 3, format!(
        "every pair over [0,3] appears at least {least} times among the first 10^6 indices"
    )));
    Ok(out)
}

// ---- views

pub fn check_views(_p: &Params) -> Result<Vec<Check>> {
    let s = "views";
    let mut out = Vec::new();

    let mut fail = None;
    'inv: for mask in 0u32..1 << 16 {
        let x = subset(mask);
        let twice = GraphView::switch(switch(&x), VertexSet::finite(x.iter().copied()));
        for v in 0..32u128 {
            for u in 0..v {
                if twice.adjacent(u, v)? != adjacent(u, v) {
                    fail = Some((mask, u, v));
                    break 'inv;
                }
            }
        }
    }
    out.push(Check::new(s, "switch-involution", fail.is_none(), match fail {
        Some((m, u, v)) => format!("X={{{}}} at ({u},{v})", crate::rado::join(&subset(m))),
        None => "every X ⊆ [0,16) on pairs below 32".into(),
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fail = None;
    'comp: for _ in 0..100 {
        let (a, b): (u32, u32) = (rng.gen_range(0..1 << 12), rng.gen_range(0..1 << 12));
        let (x, y) = (subset(a), subset(b));
        let lhs = GraphView::switch(switch(&x), VertexSet::finite(y.iter().copied()));
        let rhs = switch(&subset(a ^ b));
        for v in 0..24u128 {
            for u in 0..24u128 {
                if u != v && lhs.adjacent(u, v)? != rhs.adjacent(u, v)? {
                    fail = Some((a, b));
                    break 'comp;
                }
            }
        }
    }
    out.push(Check::new(s, "switch-composition", fail.is_none(), match fail {
        Some((a, b)) => format!("X={{{}}} Y={{{}}}", crate::rado::join(&subset(a)), crate::rado::join(&subset(b))),
        None => "100 sampled X,Y ⊆ [0,12) on [0,24)^2".into(),
    }));

    // switching keeps 3- and 5-parity; complementing keeps 4- and 5-parity
    let threes: Vec<Vec<Vertex>> = (0..12u128).combinations(3).collect();
    let fours: Vec<Vec<Vertex>> = (0..12u128).combinations(4).collect();
    let fives: Vec<Vec<Vertex>> = (0..12u128).combinations(5).collect();
    let mut fail = None;
    'sw: for mask in 0u32..1 << 12 {
        let view = switch(&subset(mask));
        for t in threes.iter().chain(&fives) {
            if odd_parity(&view, t)? != odd_parity(&GraphView::Base, t)? {
                fail = Some((mask, t.clone()));
                break 'sw;
            }
        }
    }
    out.push(Check::new(s, "switching-keeps-3-and-5-parity", fail.is_none(), match &fail {
        Some((m, t)) => format!("X={{{}}} S={{{}}}", crate::rado::join(&subset(*m)), crate::rado::join(t)),
        None => "every X ⊆ [0,12), every 3- and 5-set of [0,12)".into(),
    }));

    let comp = complement();
    let mut fail = None;
    for t in fours.iter().chain(&fives) {
        if odd_parity(&comp, t)? != odd_parity(&GraphView::Base, t)? {
            fail = Some(t.clone());
            break;
        }
    }
    out.push(Check::new(s, "complement-keeps-4-and-5-parity", fail.is_none(), match &fail {
        Some(t) => format!("S={{{}}}", crate::rado::join(t)),
        None => "every 4- and 5-set of [0,12)".into(),
    }));

    // switching at one vertex of a 4-set changes 3 of its 6 pairs
    let mut cert = None;
    'four: for t in (0..8u128).combinations(4) {
        for &x in &t {
            if odd_parity(&switch(&[x]), &t)? != odd_parity(&GraphView::Base, &t)? {
                cert = Some((t.clone(), x));
                break 'four;
            }
        }
    }
    out.push(Check::new(s, "switching-breaks-4-parity", cert.is_some(), match &cert {
        Some((t, x)) => format!("S={{{}}} X={{{x}}}", crate::rado::join(t)),
        None => "no certificate inside [0,8)".into(),
    }));

    let twice = GraphView::flip_matching(GraphView::flip_matching(GraphView::Base));
    let mut fail = None;
    'fm: for v in 0..64u128 {
        for u in 0..v {
            if twice.adjacent(u, v)? != adjacent(u, v) {
                fail = Some((u, v));
                break 'fm;
            }
        }
    }
    out.push(Check::new(s, "matching-flip-involution", fail.is_none(), match fail {
        Some((u, v)) => format!("fails at ({u},{v})"),
        None => "pairs below 64".into(),
    }));
    Ok(out)
}

// ---- iso

fn default_bundle(name: &str, p: &Params) -> Result<crate::constructions::Bundle> {
    build(name, &BuildArgs::defaults(name), p)
}

fn prov(what: &str) -> Provenance {
    Provenance::new("iso").with("check", what)
}

pub fn check_iso(p: &Params) -> Result<Vec<Check>> {
    let s = "iso";
    let mut out = Vec::new();
    let base = GraphView::Base;

    let id = build_iso(&base, &base, &[], 40, p.bound, prov("identity"))?;
    let ok = id.pairs.len() == 40 && id.pairs.iter().all(|(a, b)| a == b);
    out.push(Check::new(s, "base-to-base-from-empty-is-identity", ok, "40 steps"));

    let g = build_iso(&base, &switch(&[0]), &[(0, 0)], 1, p.bound, prov("forth"))?;
    let got: Vec<_> = g.pairs.iter().map(|(&a, &b)| (a, b)).collect();
    out.push(Check::new(s, "switch-at-0-begins", got == [(0, 0), (1, 2)], format!("{got:?}")));

    let bad = build_iso(&GraphView::delete(base.clone(), [0]), &base, &[(0, 0)], 2, p.bound, prov("seed"));
    out.push(Check::new(s, "seed-outside-universe-rejected", bad.is_err(), match bad {
        Err(e) => e.to_string(),
        Ok(_) => "accepted".into(),
    }));

    // progress: after 2k steps without a stall, [0,k) is in the domain and the range
    let k = (p.steps / 2) as Vertex;
    let t = build_iso(&base, &switch(&[0]), &[], p.steps, p.bound, prov("progress"))?;
    let ok = t.stalled.is_some()
        || (0..k).all(|i| t.pairs.contains_key(&i) && t.preimage(i).is_some());
    out.push(Check::new(s, "progress", ok, format!("[0,{k}) after {} steps", p.steps)));

    let mut tables: Vec<(String, PermTable)> = Vec::new();
    for name in ["g1", "g2", "antiauto", "chain"] {
        for (tn, t) in default_bundle(name, p)?.tables {
            tables.push((format!("{name}/{tn}"), t));
        }
    }
    for (name, t) in &tables {
        let inv = resume(t).and_then(|r| r.check());
        out.push(Check::new(s, &format!("partial-iso/{name}"), inv.is_ok(), match inv {
            Err(e) => e.to_string(),
            Ok(()) => format!("{} pairs", t.pairs.len()),
        }));
        let back = PermTable::from_text(&t.to_text());
        out.push(Check::new(s, &format!("text-round-trip/{name}"), back.as_ref() == Ok(t), "parse(render(t)) == t"));
    }

    let a = build_iso(&base, &switch(&[0]), &[(0, 0)], p.steps, p.bound, prov("det"))?;
    let b = build_iso(&base, &switch(&[0]), &[(0, 0)], p.steps, p.bound, prov("det"))?;
    out.push(Check::new(s, "deterministic", a == b && a.to_text() == b.to_text(), "two builds agree"));

    let short = build_iso(&base, &switch(&[0]), &[(0, 0)], p.steps / 2, p.bound, prov("det"))?;
    let ok = short.pairs.iter().all(|(k, v)| a.pairs.get(k) == Some(v));
    out.push(Check::new(s, "prefix-stable", ok, format!("{} steps inside {}", p.steps / 2, p.steps)));
    Ok(out)
}

// ---- classifiers

fn cycles_of(perm: &[usize]) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] || perm[i] == i {
            continue;
        }
        let mut c = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            c.push(j as Vertex);
            j = perm[j];
        }
        out.push(c);
    }
    out
}

pub fn check_classifiers(p: &Params) -> Result<Vec<Check>> {
    let s = "classifiers";
    let mut out = Vec::new();

    let perms: Vec<PermTable> = (0..5)
        .permutations(5)
        .map(|q| build_finitary(&cycles_of(&q)))
        .collect::<Result<_>>()?;
    let (mut n, mut fail) = (0u32, None);
    for (i, g) in perms.iter().enumerate() {
        for (j, h) in perms.iter().enumerate() {
            // every 8th pair keeps the sample under 2000
            if !(i * perms.len() + j).is_multiple_of(8) {
                continue;
            }
            n += 1;
            let v = cg_identities_check(g, h, 12)?;
            if v.is_refuted() && fail.is_none() {
                fail = Some((g.provenance.to_string(), h.provenance.to_string()));
            }
        }
    }
    out.push(Check::new(s, "change-set-calculus", fail.is_none(), match fail {
        Some((g, h)) => format!("fails for {g} and {h}"),
        None => format!("{n} pairs of permutations supported in [0,5), window 12"),
    }));

    let aut = build_iso(&GraphView::Base, &GraphView::Base, &[(0, 1)], p.steps, p.bound, prov("aut"))?;
    for (name, t) in [("identity", PermTable::identity(p.window)), ("automorphism", aut)] {
        for k in [3, 4, 5] {
            let v = parity_preservation(&t, p.window.min(16), k)?;
            out.push(Check::new(s, &format!("parity-{k}-kept-by-{name}"), !v.is_refuted(), "never refuted").with_verdict(v));
        }
    }

    let g1 = default_bundle("g1", p)?;
    let g = g1.table("g")?;
    let mut worst = 0;
    for w in [64, 128, 256] {
        for x in 1..w {
            worst = worst.max(changes_at(g, x, w)?.len());
        }
    }
    out.push(Check::new(s, "g1-one-change-away-from-v", worst <= 1, format!("at most {worst} change per vertex on [0,256)")));

    let anti = default_bundle("antiauto", p)?;
    let a = anti.table("g")?;
    let (small, large) = (parity_preservation(a, 6, 3)?, parity_preservation(a, 12, 3)?);
    let ok = small.is_refuted() && small.certificate == large.certificate;
    out.push(Check::new(s, "refutation-monotone/antiauto-3-parity", ok, "window 6 and 12"));
    let (small, large) = (aut_filter_evidence(g, 16, p.k_max)?, aut_filter_evidence(g, p.window, p.k_max)?);
    let ok = small.is_refuted() && small.certificate == large.certificate;
    out.push(Check::new(s, "refutation-monotone/g1-filter", ok, format!("window 16 and {}", p.window)));

    let r = classify(&PermTable::identity(p.window), p.window, p.depth, p.k_max, p.s_max)?;
    let refuted: Vec<_> = r.verdicts.iter().filter(|(_, v)| v.is_refuted()).map(|(k, _)| k.clone()).collect();
    out.push(Check::new(s, "identity-in-every-group", refuted.is_empty(), format!("refuted: {refuted:?}")));

    let r = classify(g, p.window, p.depth, p.k_max, p.s_max)?;
    let kind = |grp: &str| r.get(grp).map(|v| v.kind);
    let ok = kind("S") == Some(VerdictKind::ExactlySettled)
        && kind("AutFilter") == Some(VerdictKind::Refuted)
        && kind("Aut2") == Some(VerdictKind::Refuted);
    out.push(Check::new(s, "g1-report", ok, "in S, not in Aut2, not in Aut(F_R)"));
    Ok(out)
}

// ---- constructions

pub fn check_constructions(p: &Params) -> Result<Vec<Check>> {
    let s = "constructions";
    let mut out = Vec::new();
    for name in NAMES {
        let b = default_bundle(name, p)?;
        for r in run_claims(&b)? {
            let detail = format!("expect {:?}, got {:?}", r.expect, r.verdict.kind).to_lowercase();
            out.push(Check::new(s, &format!("{}/{}", r.bundle, r.id), r.pass, detail).with_verdict(r.verdict));
        }
        for (tn, t) in &b.tables {
            let back = PermTable::from_text(&t.to_text());
            out.push(Check::new(s, &format!("{name}/{tn}/text-round-trip"), back.as_ref() == Ok(t), "parse(render(t)) == t"));
        }
    }
    Ok(out)
}
