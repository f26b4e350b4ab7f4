//! One report per permutation, one verdict per group.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    autstar_evidence, change_rule, edge_image, faut_evidence, growth, parity_preservation, shape_of, table_changed,
    Shape,
};
use crate::classify::{aut_filter_evidence, copy_evidence};
use crate::error::{Error, Result};
use crate::rado::Vertex;
use crate::sets::VertexSet;
use crate::table::PermTable;
use crate::verdict::{Certificate, Rule, Verdict};
use crate::views::GraphView;

pub const GROUPS: [&str; 11] = ["Aut", "Aut1", "Aut2", "Aut3", "AutFilter", "AutH", "AutStarH", "B", "D", "FAutH", "S"];

/// Parity tests look at k-sets inside this many vertices at most.
const PARITY_WINDOW: Vertex = 32;

#[derive(Clone, Debug, Serialize)]
pub struct GrowthPoint {
    pub window: Vertex,
    pub changed_pairs: usize,
    pub max_at_vertex: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub schema: u32,
    pub provenance: String,
    pub window: Vertex,
    pub depth: usize,
    pub k_max: usize,
    pub s_max: Vertex,
    pub growth: Vec<GrowthPoint>,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl MembershipReport {
    pub fn get(&self, group: &str) -> Option<&Verdict> {
        self.verdicts.get(group)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

struct Ctx<'a> {
    g: &'a PermTable,
    shape: Shape,
    window: Vertex,
    d: usize,
    s_max: Vertex,
}

impl Ctx<'_> {
    fn w(&self) -> u64 {
        self.window as u64
    }

    fn settled(&self, claim: &str, rule: Rule) -> Verdict {
        Verdict::settled(claim, rule, self.w(), self.d as u64)
    }

    fn refuted(&self, claim: &str, cert: Certificate, rule: Rule) -> Verdict {
        Verdict::refuted(claim, cert, self.w(), self.d as u64).with_rule(rule)
    }

    fn fixed(&self, v: Vertex) -> bool {
        self.g.image(v) == Some(v)
    }

    /// In Aut(H) by a rule: automorphism, anti-automorphism, finite switch.
    fn aut_h_rule(&self) -> Option<Rule> {
        match &self.shape {
            Shape::Automorphism => Some(Rule::ViewAutomorphism),
            Shape::Anti => Some(Rule::SelfComplementary),
            Shape::Switch { x: VertexSet::Finite(xs), .. } if xs.len() == 1 => Some(Rule::SingleVertexSwitch),
            Shape::Switch { x: VertexSet::Finite(_), .. } => Some(Rule::FiniteSwitch),
            Shape::Matching { .. } => Some(Rule::FiniteAtEachVertex),
            Shape::Flip { s: VertexSet::Finite(_) } => Some(Rule::FiniteAtEachVertex),
            _ => None,
        }
    }

    fn edges(&self) -> Vec<VertexSet> {
        let mut e = crate::constructions::standard_edges(&self.g.provenance);
        e.extend([VertexSet::Nbhd(0), VertexSet::Nbhd(1)]);
        e
    }
}

fn aut(c: &Ctx) -> Result<Verdict> {
    let claim = "automorphism of R";
    if c.shape == Shape::Automorphism {
        return Ok(c.settled(claim, Rule::ViewAutomorphism));
    }
    let rule = change_rule(c.g);
    for b in 0..c.window {
        for a in 0..b {
            let hit = match &rule {
                Some(r) => r.changed(a, b)?,
                None => table_changed(c.g, a, b) == Some(true),
            };
            if hit {
                return Ok(Verdict::refuted(claim, Certificate::Pair { a, b }, c.w(), 0));
            }
        }
    }
    Ok(Verdict::supported(claim, c.g.covered_within(c.window) as u64, 0))
}

/// First pair in the window whose adjacency the table changes.
fn first_changed(c: &Ctx) -> Option<(Vertex, Vertex)> {
    (0..c.window).flat_map(|b| (0..b).map(move |a| (a, b))).find(|&(a, b)| table_changed(c.g, a, b) == Some(true))
}

fn growth_note(points: &[GrowthPoint]) -> String {
    let curve: Vec<String> = points
        .iter()
        .map(|p| format!("[0,{}): {} pairs, at most {} at a vertex", p.window, p.changed_pairs, p.max_at_vertex))
        .collect();
    format!("{}; finiteness is not decidable from a window", curve.join("; "))
}

/// Aut1, Aut2, Aut3 in that order.
fn finiteness(c: &Ctx, points: &[GrowthPoint]) -> [Verdict; 3] {
    let claims = ["changes finitely many adjacencies", "changes finitely many adjacencies at each vertex", "changes finitely many adjacencies at all but finitely many vertices"];
    let note = growth_note(points);
    let supported = |i: usize| Verdict::supported(claims[i], c.w(), 0).with_note(note.clone());
    let infinite_switch = |x: &VertexSet| !matches!(x, VertexSet::Finite(_) | VertexSet::All);
    match &c.shape {
        Shape::Automorphism => claims.map(|s| c.settled(s, Rule::ViewAutomorphism)),
        Shape::Finitary { moved } => {
            let v = Certificate::Vertex { vertex: moved[0] };
            [
                c.refuted(claims[0], v.clone(), Rule::FinitaryMoved),
                c.refuted(claims[1], v, Rule::FinitaryMoved),
                c.settled(claims[2], Rule::FinitarySupport),
            ]
        }
        Shape::Switch { x: VertexSet::Finite(xs), .. } if !xs.is_empty() && change_rule(c.g).is_some() => {
            let v = Certificate::Vertex { vertex: xs[0] };
            [
                c.refuted(claims[0], v.clone(), Rule::InfiniteChanges),
                c.refuted(claims[1], v, Rule::InfiniteChanges),
                c.settled(claims[2], Rule::FiniteSwitch),
            ]
        }
        Shape::Switch { x, .. } if infinite_switch(x) && change_rule(c.g).is_some() => {
            claims.map(|s| c.refuted(s, Certificate::Vertex { vertex: 0 }, Rule::InfiniteChanges))
        }
        Shape::Anti => claims.map(|s| c.refuted(s, Certificate::Vertex { vertex: 0 }, Rule::InfiniteChanges)),
        Shape::Flip { s: VertexSet::Finite(_) } => claims.map(|s| c.settled(s, Rule::FiniteFlip)),
        Shape::Matching { .. } => {
            let cert = first_changed(c).map_or(Certificate::Vertex { vertex: 0 }, |(a, b)| Certificate::Pair { a, b });
            [
                c.refuted(claims[0], cert, Rule::MatchingFlip),
                c.settled(claims[1], Rule::MatchingFlip),
                c.settled(claims[2], Rule::MatchingFlip),
            ]
        }
        Shape::Flip { s: VertexSet::NonNbhdStrict(v) } if change_rule(c.g).is_some() => {
            let w = (0..).find(|&w| w != *v && !crate::rado::adjacent(*v, w)).unwrap_or(0);
            claims.map(|s| {
                c.refuted(s, Certificate::Vertex { vertex: w }, Rule::InfiniteChanges)
                    .with_note(format!("every non-neighbour of {v} changes infinitely often"))
            })
        }
        _ => [supported(0), supported(1), supported(2)],
    }
}

fn aut_h(c: &Ctx) -> Result<Verdict> {
    let claim = "maps copies of R to copies of R";
    if let Some(rule) = c.aut_h_rule() {
        return Ok(c.settled(claim, rule));
    }
    match &c.shape {
        Shape::Finitary { moved } => {
            let x = moved[0];
            return Ok(c
                .refuted(claim, Certificate::Split { u: vec![], v: vec![x] }, Rule::FinitaryUniversalImage)
                .with_note(format!("some edge E has {x} universal in Eg")));
        }
        Shape::Flip { s: VertexSet::NonNbhdStrict(v) } if c.fixed(*v) => {
            let x = (0..).find(|&w| w != *v && !crate::rado::adjacent(*v, w)).unwrap_or(0);
            return Ok(c
                .refuted(claim, Certificate::Split { u: vec![], v: vec![x] }, Rule::NonNeighbourUniversal)
                .with_note(format!("an edge through {x} maps to a set where {x} is universal")));
        }
        _ => {}
    }
    for e in c.edges() {
        for inverse in [false, true] {
            let img = edge_image(c.g, &e, &[], inverse)?;
            let v = copy_evidence(&GraphView::Base, &img, c.window, c.d)?;
            if v.is_refuted() {
                return Ok(v.with_claim(claim).with_note(format!("image of {e}{}", if inverse { " under g^-1" } else { "" })));
            }
        }
    }
    Ok(Verdict::supported(claim, c.w(), c.d as u64))
}

fn faut_h(c: &Ctx, autstar: &Verdict) -> Result<Verdict> {
    let claim = "one finite S makes every edge image an edge";
    if c.aut_h_rule().is_some() {
        return Ok(c.settled(claim, Rule::Definitional).with_note("Aut(H) is inside FAut(H)"));
    }
    match &c.shape {
        Shape::Finitary { .. } => return Ok(c.settled(claim, Rule::FinitarySupport)),
        Shape::Flip { s: VertexSet::NonNbhdStrict(_) } => {
            return Ok(Verdict::supported(claim, c.w(), c.d as u64)
                .with_note("the change set is infinite at every non-neighbour; no window rule decides this case"))
        }
        _ => {}
    }
    if autstar.is_refuted() {
        return Ok(autstar.clone().with_claim(claim).with_note("a global S would also serve each edge separately"));
    }
    let ev = faut_evidence(c.g, &c.edges(), c.window, c.d, c.s_max)?;
    Ok(ev.verdict)
}

fn autstar_h(c: &Ctx) -> Result<Verdict> {
    let claim = "every edge has a finite S with (E-S)g and (E-S)g^-1 edges";
    if c.aut_h_rule().is_some() {
        return Ok(c.settled(claim, Rule::Definitional).with_note("Aut(H) is inside Aut*(H)"));
    }
    match &c.shape {
        Shape::Switch { .. } => return Ok(c.settled(claim, Rule::SwitchingRepair)),
        Shape::Finitary { .. } => return Ok(c.settled(claim, Rule::FinitarySupport)),
        _ => {}
    }
    let mut last = Verdict::supported(claim, c.w(), c.d as u64);
    for e in c.edges() {
        let ev = autstar_evidence(c.g, &e, c.window, c.d, c.s_max)?;
        if ev.verdict.is_refuted() {
            return Ok(ev.verdict.with_claim(claim).with_note(format!("edge {e}")));
        }
        if ev.set.is_none() {
            last = ev.verdict;
        }
    }
    Ok(last)
}

fn parity(c: &Ctx) -> Result<[Verdict; 3]> {
    let claims = ["preserves 3-parity", "preserves 4-parity", "preserves 5-parity"];
    let pw = c.window.min(PARITY_WINDOW);
    let window = |k: usize| -> Result<Verdict> {
        let v = parity_preservation(c.g, pw, k)?;
        Ok(if v.is_refuted() || pw == c.window {
            v
        } else {
            let extra = format!("k-sets drawn from [0,{pw})");
            let note = v.note.clone().map_or(extra.clone(), |n| format!("{n}; {extra}"));
            v.with_note(note)
        })
    };
    let p = |k: usize| Verdict::settled(claims[k - 3], Rule::ViewAutomorphism, c.w(), k as u64);
    Ok(match &c.shape {
        Shape::Automorphism => [p(3), p(4), p(5)],
        Shape::Switch { .. } => [
            Verdict::settled(claims[0], Rule::SwitchingParity, c.w(), 3),
            window(4)?,
            Verdict::settled(claims[2], Rule::SwitchingParity, c.w(), 5),
        ],
        Shape::Anti => [
            window(3)?,
            Verdict::settled(claims[1], Rule::ComplementParity, c.w(), 4),
            Verdict::settled(claims[2], Rule::ComplementParity, c.w(), 5),
        ],
        _ => [window(3)?, window(4)?, window(5)?],
    })
}

/// Evidence for one group.
pub fn member(g: &PermTable, group: &str, window: Vertex, d: usize, k_max: usize, s_max: Vertex) -> Result<Verdict> {
    let c = Ctx { g, shape: shape_of(g), window, d, s_max };
    verdict_for(&c, group, k_max, &growth_points(g, window)?)
}

fn growth_points(g: &PermTable, window: Vertex) -> Result<Vec<GrowthPoint>> {
    Ok(growth(g, &[window / 4, window / 2, window])?
        .into_iter()
        .map(|(window, changed_pairs, max_at_vertex)| GrowthPoint { window, changed_pairs, max_at_vertex })
        .collect())
}

fn verdict_for(c: &Ctx, group: &str, k_max: usize, pts: &[GrowthPoint]) -> Result<Verdict> {
    Ok(match group {
        "Aut" => aut(c)?,
        "Aut1" | "Aut2" | "Aut3" => {
            let [a1, a2, a3] = finiteness(c, pts);
            match group {
                "Aut1" => a1,
                "Aut2" => a2,
                _ => a3,
            }
        }
        "AutFilter" => aut_filter_evidence(c.g, c.window, k_max)?,
        "AutH" => aut_h(c)?,
        "AutStarH" => autstar_h(c)?,
        "FAutH" => faut_h(c, &autstar_h(c)?)?,
        "S" | "D" | "B" => {
            let [s, dd, b] = parity(c)?;
            match group {
                "S" => s,
                "D" => dd,
                _ => b,
            }
        }
        other => return Err(Error::PreconditionViolated(format!("unknown group {other}"))),
    })
}

/// Evidence for each of the eleven groups.
pub fn classify(g: &PermTable, window: Vertex, d: usize, k_max: usize, s_max: Vertex) -> Result<MembershipReport> {
    let c = Ctx { g, shape: shape_of(g), window, d, s_max };
    let pts = growth_points(g, window)?;
    let mut verdicts = BTreeMap::new();
    verdicts.insert("Aut".to_string(), aut(&c)?);
    let [a1, a2, a3] = finiteness(&c, &pts);
    verdicts.insert("Aut1".to_string(), a1);
    verdicts.insert("Aut2".to_string(), a2);
    verdicts.insert("Aut3".to_string(), a3);
    verdicts.insert("AutFilter".to_string(), aut_filter_evidence(g, window, k_max)?);
    verdicts.insert("AutH".to_string(), aut_h(&c)?);
    let star = autstar_h(&c)?;
    verdicts.insert("FAutH".to_string(), faut_h(&c, &star)?);
    verdicts.insert("AutStarH".to_string(), star);
    let [s, dd, b] = parity(&c)?;
    verdicts.insert("S".to_string(), s);
    verdicts.insert("D".to_string(), dd);
    verdicts.insert("B".to_string(), b);
    debug_assert!(GROUPS.iter().all(|k| verdicts.contains_key(*k)));
    Ok(MembershipReport {
        schema: 1,
        provenance: g.provenance.to_string(),
        window,
        depth: d,
        k_max,
        s_max,
        growth: pts,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_finitary;

    #[test]
    fn identity_is_everywhere() {
        let r = classify(&PermTable::identity(32), 32, 2, 2, 4).unwrap();
        assert_eq!(r.verdicts.keys().map(String::as_str).collect::<Vec<_>>(), GROUPS.to_vec());
        assert!(r.verdicts.values().all(|v| v.is_positive()), "{}", r.to_json());
    }

    #[test]
    fn transposition() {
        let t = build_finitary(&[vec![0, 1]]).unwrap();
        let r = classify(&t, 32, 2, 2, 4).unwrap();
        assert!(r.get("Aut").unwrap().is_refuted());
        assert!(r.get("Aut2").unwrap().is_refuted());
        assert!(r.get("S").unwrap().is_refuted());
        assert!(r.get("Aut3").unwrap().is_positive());
        assert!(r.get("FAutH").unwrap().is_positive());
        assert!(r.get("AutH").unwrap().is_refuted());
        let g = &r.growth;
        assert!(g[0].max_at_vertex < g[2].max_at_vertex);
    }
}
