//! Executable versions of the permutations and set systems built in the proofs.
//!
//! Each builder returns a [`Bundle`]: named tables, views and sets, plus claims
//! that name a classifier call and the verdict kind it should produce.

mod claims;
mod finitary;
pub mod g5;
pub mod g6;
mod repair;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::{build_iso, PartialIso};
use crate::rado::{adjacent, Vertex};
use crate::sets::VertexSet;
use crate::stream::Stream;
use crate::syntax::{parse_set, parse_view};
use crate::table::{PermTable, Provenance};
use crate::views::GraphView;

pub use claims::{run_claim, run_claims, Claim, ClaimCall, ClaimResult, Expect};
pub use finitary::{build_finitary, finitary_cycles, parse_cycles, render_cycles};
pub use repair::{bullets_hold, switching_repair, Repair};

/// Window and search parameters shared by every builder and claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub window: Vertex,
    pub depth: usize,
    pub k_max: usize,
    pub s_max: Vertex,
    pub steps: u64,
    pub bound: Vertex,
}

impl Default for Params {
    fn default() -> Self {
        Params { window: 64, depth: 2, k_max: 3, s_max: 8, steps: 64, bound: Vertex::MAX }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub tables: BTreeMap<String, PermTable>,
    pub views: BTreeMap<String, GraphView>,
    pub sets: BTreeMap<String, VertexSet>,
    pub claims: Vec<Claim>,
    pub stage_log: Vec<String>,
}

impl Bundle {
    fn new(id: &str) -> Self {
        Bundle { id: id.to_string(), ..Default::default() }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.push((k.to_string(), v.to_string()));
        self
    }

    fn claim(&mut self, id: impl Into<String>, call: ClaimCall, expect: Expect) {
        self.claims.push(Claim { id: id.into(), call, expect });
    }

    /// Membership of table `g` in a group, as decided by the classifier.
    fn member(&mut self, id: &str, group: &str, expect: Expect, p: &Params) {
        let call = ClaimCall::Member {
            table: "g".into(),
            group: group.into(),
            window: p.window,
            d: p.depth,
            k_max: p.k_max,
            s_max: p.s_max,
        };
        self.claim(id, call, expect);
    }

    pub fn table(&self, name: &str) -> Result<&PermTable> {
        self.tables.get(name).ok_or_else(|| Error::PreconditionViolated(format!("bundle {} has no table {name}", self.id)))
    }

    pub fn view(&self, name: &str) -> Result<&GraphView> {
        self.views.get(name).ok_or_else(|| Error::PreconditionViolated(format!("bundle {} has no view {name}", self.id)))
    }

    pub fn set(&self, name: &str) -> Result<&VertexSet> {
        self.sets.get(name).ok_or_else(|| Error::PreconditionViolated(format!("bundle {} has no set {name}", self.id)))
    }

    /// Write the bundle as a directory: a manifest, one file per table, the stage log.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir.join("tables"))?;
        for (name, t) in &self.tables {
            std::fs::write(dir.join("tables").join(format!("{name}.perm")), t.to_text())?;
        }
        let m = Manifest {
            id: self.id.clone(),
            params: self.params.iter().cloned().collect(),
            tables: self.tables.keys().cloned().collect(),
            views: self.views.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            sets: self.sets.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            claims: self.claims.clone(),
        };
        let mut json = serde_json::to_string_pretty(&m).map_err(|e| Error::Io(e.to_string()))?;
        json.push('\n');
        std::fs::write(dir.join("bundle.json"), json)?;
        if !self.stage_log.is_empty() {
            let mut log = self.stage_log.join("\n");
            log.push('\n');
            std::fs::write(dir.join("stage_log.txt"), log)?;
        }
        Ok(())
    }

    pub fn read_dir(dir: &Path) -> Result<Bundle> {
        let text = std::fs::read_to_string(dir.join("bundle.json"))?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let mut b = Bundle::new(&m.id);
        b.params = m.params.into_iter().collect();
        for name in m.tables {
            let t = std::fs::read_to_string(dir.join("tables").join(format!("{name}.perm")))?;
            b.tables.insert(name, PermTable::from_text(&t)?);
        }
        for (k, v) in m.views {
            b.views.insert(k, parse_view(&v)?);
        }
        for (k, v) in m.sets {
            b.sets.insert(k, parse_set(&v)?);
        }
        b.claims = m.claims;
        if let Ok(log) = std::fs::read_to_string(dir.join("stage_log.txt")) {
            b.stage_log = log.lines().map(String::from).collect();
        }
        Ok(b)
    }
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    id: String,
    params: BTreeMap<String, String>,
    tables: Vec<String>,
    views: BTreeMap<String, String>,
    sets: BTreeMap<String, String>,
    claims: Vec<Claim>,
}

/// Streams created on first use of a standard name.
pub fn standard_streams(name: &str) -> Option<Vec<Stream>> {
    g5::streams(name).or_else(|| g6::streams(name))
}

/// Edges of H that a construction's argument is about.
pub fn standard_edges(p: &Provenance) -> Vec<VertexSet> {
    let num = |k: &str| p.param(k).and_then(|s| s.parse::<Vertex>().ok());
    match p.construction.as_str() {
        "g5" => (1..=num("stages").unwrap_or(1) as usize).map(g5::edge).collect(),
        "g6" => num("v").map(|v| vec![g6::blocks(v).0]).unwrap_or_default(),
        "g4" => match (num("p"), num("q")) {
            (Some(p), Some(q)) => vec![g4_blocks(p, q).4],
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

pub(crate) fn g6_blocks(v: Vertex) -> Option<(VertexSet, VertexSet)> {
    Some(g6::blocks(v))
}

/// Images that need no table entry, for constructions with a closed form.
pub(crate) fn lazy_image(p: &Provenance, v: Vertex, inverse: bool) -> Option<Vertex> {
    let mut cycles = finitary_cycles(p)?;
    if inverse {
        for c in &mut cycles {
            c.reverse();
        }
    }
    Some(finitary::apply(&cycles, v))
}

fn provenance(name: &str, params: &[(&str, String)]) -> Provenance {
    params.iter().fold(Provenance::new(name), |p, (k, v)| p.with(k, v))
}

fn non_neighbours(v: Vertex, n: usize) -> Vec<Vertex> {
    (0..).filter(|&w| w != v && !adjacent(v, w)).take(n).collect()
}

/// Isomorphism onto R switched at v, fixing v.
pub fn build_g1(v: Vertex, p: &Params) -> Result<Bundle> {
    let target = GraphView::switch(GraphView::Base, VertexSet::finite([v]));
    let prov = provenance("g1", &[("v", v.to_string()), ("steps", p.steps.to_string())]);
    let g = build_iso(&GraphView::Base, &target, &[(v, v)], p.steps, p.bound, prov)?;
    let mut b = Bundle::new("g1").param("v", v);
    b.views.insert("R".into(), GraphView::Base);
    b.views.insert("switched".into(), target);
    b.sets.insert("N".into(), VertexSet::Nbhd(v));
    b.tables.insert("g".into(), g);
    let t = || "g".to_string();
    b.claim("one-change-per-vertex", ClaimCall::ChangesAtMost { table: t(), except: v, max: 1, window: p.window }, Expect::Positive);
    b.claim("neighbourhood-image-disjoint", ClaimCall::ImageDisjoint { table: t(), vertices: vec![v], window: p.window }, Expect::Positive);
    b.claim("not-in-filter-stabilizer", ClaimCall::AutFilter { table: t(), window: p.window, k_max: p.k_max }, Expect::Refuted);
    b.claim("keeps-3-parity", ClaimCall::Parity { table: t(), k: 3, window: p.window }, Expect::Positive);
    b.member("in-switching-group", "S", Expect::Settled, p);
    b.member("in-aut3", "Aut3", Expect::Settled, p);
    b.member("not-in-aut2", "Aut2", Expect::Refuted, p);
    Ok(b)
}

/// Isomorphism onto R complemented among the non-neighbours of v, fixing v.
pub fn build_g2(v: Vertex, p: &Params) -> Result<Bundle> {
    let target = GraphView::flip_within(GraphView::Base, VertexSet::NonNbhdStrict(v));
    let prov = provenance("g2", &[("v", v.to_string()), ("steps", p.steps.to_string())]);
    let g = build_iso(&GraphView::Base, &target, &[(v, v)], p.steps, p.bound, prov)?;
    let mut b = Bundle::new("g2").param("v", v);
    b.views.insert("R".into(), GraphView::Base);
    b.views.insert("flipped".into(), target);
    b.sets.insert("NCS".into(), VertexSet::NonNbhdStrict(v));
    b.tables.insert("g".into(), g);
    let windows = vec![p.window / 4, p.window / 2, p.window];
    b.claim(
        "changes-grow-at-non-neighbours",
        ClaimCall::ChangesGrow { table: "g".into(), vertices: non_neighbours(v, 3), windows },
        Expect::Positive,
    );
    b.claim("in-filter-stabilizer", ClaimCall::AutFilter { table: "g".into(), window: p.window, k_max: p.k_max }, Expect::Positive);
    b.member("not-in-aut3", "Aut3", Expect::Refuted, p);
    Ok(b)
}

/// Windows used for the anti-automorphism's table claims.
pub const ANTI_WINDOW: Vertex = 12;

/// Isomorphism from R onto its complement.
pub fn build_antiauto(p: &Params) -> Result<Bundle> {
    let target = GraphView::flip_within(GraphView::Base, VertexSet::All);
    let prov = provenance("antiauto", &[("steps", p.steps.to_string())]);
    // The complement of R is vertex-transitive, so 0 may be fixed.
    let g = build_iso(&GraphView::Base, &target, &[(0, 0)], p.steps, p.bound, prov)?;
    let mut b = Bundle::new("antiauto");
    b.views.insert("R".into(), GraphView::Base);
    b.views.insert("complement".into(), target);
    b.tables.insert("g".into(), g);
    let w = p.window.min(ANTI_WINDOW);
    let t = || "g".to_string();
    b.claim("inverts-adjacency", ClaimCall::Inversion { table: t(), window: p.window }, Expect::Positive);
    b.claim("breaks-3-parity", ClaimCall::Parity { table: t(), k: 3, window: w }, Expect::Refuted);
    b.claim("keeps-4-parity", ClaimCall::Parity { table: t(), k: 4, window: w }, Expect::Positive);
    b.claim("keeps-5-parity", ClaimCall::Parity { table: t(), k: 5, window: w }, Expect::Positive);
    b.claim("neighbourhood-image-disjoint", ClaimCall::ImageDisjoint { table: t(), vertices: vec![0, 1, 2], window: p.window }, Expect::Positive);
    b.claim("not-in-filter-stabilizer", ClaimCall::AutFilter { table: t(), window: p.window, k_max: p.k_max }, Expect::Refuted);
    b.member("in-duality-group", "D", Expect::Settled, p);
    b.member("in-aut-h", "AutH", Expect::Settled, p);
    Ok(b)
}

/// A, B, C, D, E for the pair p, q.
pub fn g4_blocks(p: Vertex, q: Vertex) -> (VertexSet, VertexSet, VertexSet, VertexSet, VertexSet) {
    let w = |u: Vec<Vertex>, v: Vec<Vertex>| VertexSet::witness(u, v).expect("p != q");
    let a = w(vec![p, q], vec![]);
    let b = w(vec![p], vec![q]);
    let c = w(vec![q], vec![p]);
    let d = w(vec![], vec![p, q]);
    let e = VertexSet::union(VertexSet::finite([q]), VertexSet::union(b.clone(), c.clone()));
    (a, b, c, d, e)
}

/// R without p, switched over C, where q becomes isolated in E = {q} ∪ B ∪ C.
pub fn build_g4(p: Vertex, q: Vertex, prm: &Params) -> Result<Bundle> {
    if p == q {
        return Err(Error::PreconditionViolated("p and q must differ".into()));
    }
    let (a, bb, c, d, e) = g4_blocks(p, q);
    let r1 = GraphView::delete(GraphView::Base, [p]);
    let sigma = GraphView::switch(r1.clone(), c.clone());
    let prov = provenance("g4", &[("p", p.to_string()), ("q", q.to_string()), ("steps", prm.steps.to_string())]);
    let g = build_iso(&r1, &sigma, &[], prm.steps, prm.bound, prov)?;
    let mut b = Bundle::new("g4").param("p", p).param("q", q);
    for (k, s) in [("A", a), ("B", bb), ("C", c), ("D", d), ("E", e)] {
        b.sets.insert(k.into(), s);
    }
    b.views.insert("R".into(), GraphView::Base);
    b.views.insert("R1".into(), r1);
    b.views.insert("sigma".into(), sigma);
    b.tables.insert("g".into(), g);
    let (window, d) = (prm.window, prm.depth.max(3));
    b.claim("E-is-a-copy", ClaimCall::Copy { view: "R".into(), set: "E".into(), window, d }, Expect::Positive);
    b.claim("E-case-split-witnesses", ClaimCall::CaseSplit { p, q, window, d }, Expect::Positive);
    b.claim("switched-is-a-copy", ClaimCall::Extension { view: "sigma".into(), window, d }, Expect::Positive);
    b.claim("q-isolated-after-switching", ClaimCall::Isolated { view: "sigma".into(), set: "E".into(), vertex: q, window }, Expect::Settled);
    b.claim("E-not-a-copy-after-switching", ClaimCall::Copy { view: "sigma".into(), set: "E".into(), window, d: 1 }, Expect::Refuted);
    b.claim("block-closed-forms", ClaimCall::BlockForms { p, q, lo: p.max(q) + 1, hi: 256 }, Expect::Positive);
    b.sets.insert("Np".into(), VertexSet::Nbhd(p));
    b.claim("neighbourhood-switch-repair", ClaimCall::Repair { set: "Np".into(), depth: 2, window: window.min(24) }, Expect::Positive);
    Ok(b)
}

/// The staged construction, its switching isomorphism g: σ(R) → R, and the edges E_n.
pub fn build_g5(stages: usize, prm: &Params) -> Result<Bundle> {
    if stages == 0 {
        return Err(Error::PreconditionViolated("stages must be at least 1".into()));
    }
    let src = g5::source();
    let run = src.run();
    if run.log.len() < stages {
        let (n, why) = run.failure.clone().unwrap_or((run.log.len(), "stage limit".into()));
        return Err(Error::ResourceExhausted(format!("stage {n}: {why}")));
    }
    if let Some(r) = run.log[..stages].iter().find(|r| match &r.added {
        g5::Added::Triple { a, b, c, d, .. } => [a, b, c, d].iter().any(|&&x| x > prm.bound),
        g5::Added::Routed { d, .. } => *d > prm.bound,
    }) {
        return Err(Error::ResourceExhausted(format!("stage {}: a chosen vertex exceeds the bound", r.stage)));
    }
    let triples = run.log[..stages].iter().filter(|r| matches!(r.added, g5::Added::Triple { .. })).count();
    let sigma = g5::switched_view();
    let prov = provenance("g5", &[("stages", stages.to_string()), ("steps", prm.steps.to_string())]);
    // Map the b_n first: once the alternation has placed large images, their
    // forth steps need vertices beyond u128.
    let mut iso = PartialIso::new(sigma.clone(), GraphView::Base);
    let mut early_stall = None;
    for n in 1..=triples {
        let (_, bn, _) = run.triple(n).expect("triple exists");
        if let Err(e) = iso.forth(bn, prm.bound) {
            early_stall = Some(format!("forth on b_{n}: {e}"));
            break;
        }
    }
    let seed: Vec<(Vertex, Vertex)> = iso.pairs().iter().map(|(&a, &b)| (a, b)).collect();
    let mut g = build_iso(&sigma, &GraphView::Base, &seed, prm.steps, prm.bound, prov)?;
    if let Some(e) = early_stall {
        g.stalled.get_or_insert(e);
    }
    let mut b = Bundle::new("g5").param("stages", stages);
    b.stage_log = run.log[..stages].iter().map(|r| r.to_string()).collect();
    b.views.insert("R".into(), GraphView::Base);
    b.views.insert("sigma".into(), sigma);
    for k in ["A", "B", "C", "D"] {
        b.sets.insert(k.into(), g5::set(k));
    }
    b.tables.insert("g_inv".into(), g.inverse());
    b.tables.insert("g".into(), g);
    b.claim("condition-1", ClaimCall::ConditionOne { stages }, Expect::Settled);
    b.claim("blocks-disjoint-and-fresh", ClaimCall::Freshness { stages }, Expect::Positive);
    for n in 1..=triples {
        let name = format!("E.{n}");
        b.sets.insert(name.clone(), g5::edge(n));
        let (_, bn, _) = run.triple(n).expect("triple exists");
        b.claim(format!("{name}-is-a-copy"), ClaimCall::Copy { view: "R".into(), set: name.clone(), window: prm.window, d: 2 }, Expect::Positive);
        b.claim(
            format!("{name}-isolates-b{n}"),
            ClaimCall::Isolated { view: "sigma".into(), set: name, vertex: bn, window: prm.window },
            Expect::Settled,
        );
    }
    for s in [4, 16] {
        b.claim(
            format!("no-global-exceptional-set-below-{s}"),
            ClaimCall::AvoidFinite { table: "g".into(), s, stages: triples, window: prm.window, d: prm.depth },
            Expect::Refuted,
        );
    }
    b.member("in-switching-group", "S", Expect::Settled, prm);
    Ok(b)
}

/// The block map sending an edge onto an independent set.
pub fn build_g6(v: Vertex, prm: &Params) -> Result<Bundle> {
    let g = g6::build_g6(v, prm.steps.max(prm.window as u64))?;
    let (e, d) = g6::blocks(v);
    let mut b = Bundle::new("g6").param("v", v);
    b.views.insert("R".into(), GraphView::Base);
    b.sets.insert("E".into(), e);
    b.sets.insert("D".into(), d);
    b.sets.insert("N".into(), VertexSet::Nbhd(v));
    b.tables.insert("g".into(), g);
    let t = || "g".to_string();
    b.claim("permutation-on-window", ClaimCall::Permutation { table: t(), window: prm.window }, Expect::Positive);
    b.claim("in-filter-stabilizer", ClaimCall::AutFilter { table: t(), window: prm.window, k_max: prm.k_max }, Expect::Positive);
    b.claim("E-is-a-copy", ClaimCall::Copy { view: "R".into(), set: "E".into(), window: prm.window, d: prm.depth }, Expect::Positive);
    b.claim("D-is-not-a-copy", ClaimCall::Copy { view: "R".into(), set: "D".into(), window: prm.window, d: 1 }, Expect::Refuted);
    b.claim(
        "no-exceptional-set-for-E",
        ClaimCall::AutStar { table: t(), set: "E".into(), window: prm.window, d: prm.depth.min(2), s_max: prm.s_max },
        Expect::Refuted,
    );
    Ok(b)
}

/// A finitary permutation with the claims that hold for every one of them.
pub fn build_finitary_bundle(cycles: &[Vec<Vertex>], prm: &Params) -> Result<Bundle> {
    let g = build_finitary(cycles)?;
    let mut b = Bundle::new("finitary").param("cycles", render_cycles(cycles));
    b.views.insert("R".into(), GraphView::Base);
    let moved: Vec<Vertex> = cycles.iter().flatten().copied().collect();
    let top = moved.iter().max().map_or(0, |m| m + 1);
    let edges: Vec<String> = (top..top + 3)
        .map(|v| {
            let name = format!("N{v}");
            b.sets.insert(name.clone(), VertexSet::Nbhd(v));
            name
        })
        .collect();
    b.tables.insert("g".into(), g);
    let t = || "g".to_string();
    if let Some(&x) = moved.first() {
        let windows = vec![prm.window / 4, prm.window / 2, prm.window];
        b.claim("changes-grow-at-moved-vertex", ClaimCall::ChangesGrow { table: t(), vertices: vec![x], windows }, Expect::Positive);
    }
    b.claim(
        "one-exceptional-set",
        ClaimCall::Faut { table: t(), sets: edges, window: prm.window, d: prm.depth, s_max: prm.s_max.min(top.max(1)) },
        Expect::Positive,
    );
    b.claim("in-filter-stabilizer", ClaimCall::AutFilter { table: t(), window: prm.window, k_max: prm.k_max }, Expect::Positive);
    if !moved.is_empty() {
        b.member("in-aut3", "Aut3", Expect::Settled, prm);
        b.member("not-in-aut2", "Aut2", Expect::Refuted, prm);
        b.member("in-faut-h", "FAutH", Expect::Settled, prm);
        b.member("not-in-aut-h", "AutH", Expect::Refuted, prm);
    }
    Ok(b)
}

/// Isomorphisms onto R with one pair flipped and with the matching {2k, 2k+1} flipped:
/// the first changes one adjacency, the second one adjacency at every vertex.
pub fn build_chain(prm: &Params) -> Result<Bundle> {
    let mut b = Bundle::new("chain");
    b.views.insert("R".into(), GraphView::Base);
    let views = [
        ("pair", GraphView::flip_within(GraphView::Base, VertexSet::finite([0, 1]))),
        ("matching", GraphView::flip_matching(GraphView::Base)),
    ];
    for (name, target) in views {
        let prov = provenance("chain", &[("flip", name.to_string()), ("steps", prm.steps.to_string())]);
        let g = build_iso(&GraphView::Base, &target, &[(0, 0)], prm.steps, prm.bound, prov)?;
        b.views.insert(name.into(), target);
        b.tables.insert(name.into(), g);
    }
    let mut member = |id: &str, table: &str, group: &str, expect: Expect| {
        let call = ClaimCall::Member {
            table: table.into(),
            group: group.into(),
            window: prm.window,
            d: prm.depth,
            k_max: prm.k_max,
            s_max: prm.s_max,
        };
        b.claim(id, call, expect);
    };
    member("pair-not-in-aut", "pair", "Aut", Expect::Refuted);
    member("pair-in-aut1", "pair", "Aut1", Expect::Settled);
    member("matching-not-in-aut1", "matching", "Aut1", Expect::Refuted);
    member("matching-in-aut2", "matching", "Aut2", Expect::Settled);
    member("matching-in-filter-stabilizer", "matching", "AutFilter", Expect::Settled);
    member("matching-in-aut-h", "matching", "AutH", Expect::Settled);
    member("matching-not-in-duality-group", "matching", "D", Expect::Refuted);
    member("matching-not-in-switching-group", "matching", "S", Expect::Refuted);
    member("matching-not-in-b", "matching", "B", Expect::Refuted);
    Ok(b)
}

/// The transposition (v w) with w ∈ R(v) maps R(v) to a set where v is universal.
pub fn lpsct_c_demo(v: Vertex, w: Vertex, prm: &Params) -> Result<Bundle> {
    if !adjacent(v, w) {
        return Err(Error::PreconditionViolated(format!("{w} is not a neighbour of {v}")));
    }
    let g = build_finitary(&[vec![v, w]])?;
    let e = VertexSet::Nbhd(v);
    let eg = crate::classify::image_set(&g, &e, false)?;
    let mut b = Bundle::new("lpsct_c").param("v", v).param("w", w);
    b.views.insert("R".into(), GraphView::Base);
    b.sets.insert("E".into(), e);
    b.sets.insert("Eg".into(), eg);
    b.tables.insert("g".into(), g);
    b.claim("E-is-a-copy", ClaimCall::Copy { view: "R".into(), set: "E".into(), window: prm.window, d: prm.depth }, Expect::Positive);
    b.claim("Eg-is-not-a-copy", ClaimCall::Copy { view: "R".into(), set: "Eg".into(), window: prm.window, d: 1 }, Expect::Refuted);
    Ok(b)
}

/// Every construction name the CLI accepts.
pub const NAMES: [&str; 9] = ["g1", "g2", "antiauto", "g4", "g5", "g6", "finitary", "lpsct_c", "chain"];

/// Construction-specific arguments; which ones a name needs is given by [`required_args`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildArgs {
    pub v: Option<Vertex>,
    pub p: Option<Vertex>,
    pub q: Option<Vertex>,
    pub w: Option<Vertex>,
    pub stages: Option<usize>,
    pub cycles: Option<String>,
}

impl BuildArgs {
    /// The arguments the verify suites and the diagram use.
    pub fn defaults(name: &str) -> Self {
        let mut a = BuildArgs::default();
        for k in required_args(name) {
            match *k {
                "v" => a.v = Some(0),
                "p" => a.p = Some(0),
                "q" => a.q = Some(1),
                "w" => a.w = Some(1),
                "stages" => a.stages = Some(8),
                _ => a.cycles = Some("(0,1)".into()),
            }
        }
        a
    }
}

pub fn required_args(name: &str) -> &'static [&'static str] {
    match name {
        "g1" | "g2" | "g6" => &["v"],
        "g4" => &["p", "q"],
        "g5" => &["stages"],
        "finitary" => &["cycles"],
        "lpsct_c" => &["v", "w"],
        _ => &[],
    }
}

fn need<T: Clone>(x: &Option<T>, name: &str, key: &str) -> Result<T> {
    x.clone().ok_or_else(|| Error::PreconditionViolated(format!("{name} needs --{key}")))
}

/// Build a construction by name.
pub fn build(name: &str, a: &BuildArgs, prm: &Params) -> Result<Bundle> {
    match name {
        "g1" => build_g1(need(&a.v, name, "v")?, prm),
        "g2" => build_g2(need(&a.v, name, "v")?, prm),
        "antiauto" => build_antiauto(prm),
        "g4" => build_g4(need(&a.p, name, "p")?, need(&a.q, name, "q")?, prm),
        "g5" => build_g5(need(&a.stages, name, "stages")?, prm),
        "g6" => build_g6(need(&a.v, name, "v")?, prm),
        "finitary" => build_finitary_bundle(&parse_cycles(&need(&a.cycles, name, "cycles")?)?, prm),
        "lpsct_c" => lpsct_c_demo(need(&a.v, name, "v")?, need(&a.w, name, "w")?, prm),
        "chain" => build_chain(prm),
        _ => Err(Error::PreconditionViolated(format!("unknown construction {name}; expected one of {}", NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Params {
        Params { window: 24, steps: 24, ..Params::default() }
    }

    #[test]
    fn g1_table_begins() {
        let b = build_g1(0, &Params { steps: 2, ..Params::default() }).unwrap();
        let g = b.table("g").unwrap();
        assert_eq!(g.pairs.iter().take(2).map(|(&a, &b)| (a, b)).collect::<Vec<_>>(), vec![(0, 0), (1, 2)]);
    }

    #[test]
    fn antiauto_table_begins() {
        let b = build_antiauto(&Params { steps: 2, ..Params::default() }).unwrap();
        let g = b.table("g").unwrap();
        assert_eq!(g.pairs.iter().take(2).map(|(&a, &b)| (a, b)).collect::<Vec<_>>(), vec![(0, 0), (1, 2)]);
    }

    #[test]
    fn g4_blocks_mod_four() {
        let (a, b, c, d, _) = g4_blocks(0, 1);
        for n in 2..256u128 {
            assert_eq!(a.member(n).unwrap(), n % 4 == 3);
            assert_eq!(b.member(n).unwrap(), n % 4 == 1);
            assert_eq!(c.member(n).unwrap(), n % 4 == 2);
            assert_eq!(d.member(n).unwrap(), n % 4 == 0);
        }
    }

    #[test]
    fn lpsct_precondition() {
        assert!(matches!(lpsct_c_demo(0, 2, &small()), Err(Error::PreconditionViolated(_))));
        let b = lpsct_c_demo(0, 1, &small()).unwrap();
        let eg = b.set("Eg").unwrap();
        for z in 0..64 {
            assert_eq!(eg.member(z).unwrap(), z == 0 || (z % 2 == 1 && z != 1), "{z}");
        }
    }

    #[test]
    fn bundles_round_trip() {
        let b = build_g4(0, 1, &small()).unwrap();
        let dir = std::env::temp_dir().join(format!("radokit-bundle-{}", std::process::id()));
        b.write_dir(&dir).unwrap();
        let back = Bundle::read_dir(&dir).unwrap();
        assert_eq!(back.tables, b.tables);
        assert_eq!(back.sets, b.sets);
        assert_eq!(back.views, b.views);
        assert_eq!(back.claims, b.claims);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
