//! Inclusions between the groups, each backed by bundle claims or a symbolic rule.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SCHEMA;
use crate::constructions::{build, run_claims, BuildArgs, ClaimResult, Params, NAMES};
use crate::error::Result;
use crate::verdict::{Rule, VerdictKind};

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictKind>,
    /// Settled exactly, or a symbolic rule; window-only support is not exact.
    pub exact: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recheck: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionEdge {
    pub lower: String,
    pub upper: String,
    /// strict-subgroup, subgroup, equal, incomparable, not-subgroup or trivial-intersection.
    pub relation: String,
    /// `proved` for strict edges, `unknown` where properness is open; absent when not examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strictness: Option<String>,
    pub statement: String,
    pub evidence: Vec<Evidence>,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagram {
    pub schema: u32,
    pub params: Params,
    pub edges: Vec<InclusionEdge>,
}

impl InclusionEdge {
    fn open(mut self) -> Self {
        self.strictness = Some("unknown".into());
        self
    }
}

impl Diagram {
    pub fn valid(&self) -> bool {
        self.edges.iter().all(|e| e.valid)
    }

    pub fn to_json(&self) -> String {
        super::to_json(self)
    }
}

struct Results(BTreeMap<(String, String), ClaimResult>);

impl Results {
    fn cite(&self, bundle: &str, claim: &str) -> Evidence {
        match self.0.get(&(bundle.to_string(), claim.to_string())) {
            Some(r) => Evidence {
                bundle: Some(bundle.into()),
                claim: Some(claim.into()),
                rule: r.verdict.rule,
                verdict: Some(r.verdict.kind),
                exact: r.verdict.kind != VerdictKind::SupportedUpTo,
                pass: r.pass,
                recheck: r.recheck,
            },
            None => Evidence {
                bundle: Some(bundle.into()),
                claim: Some(claim.into()),
                rule: None,
                verdict: None,
                exact: false,
                pass: false,
                recheck: None,
            },
        }
    }
}

fn rule(r: Rule) -> Evidence {
    Evidence { bundle: None, claim: None, rule: Some(r), verdict: None, exact: true, pass: true, recheck: None }
}

fn edge(lower: &str, upper: &str, relation: &str, statement: &str, evidence: Vec<Evidence>) -> InclusionEdge {
    let all_pass = evidence.iter().all(|e| e.pass && e.recheck != Some(false));
    let refuted = evidence.iter().any(|e| e.verdict == Some(VerdictKind::Refuted));
    let support = evidence.iter().any(|e| e.rule.is_some() && e.claim.is_none() || e.verdict.is_some_and(|k| k != VerdictKind::Refuted));
    let valid = all_pass
        && match relation {
            "subgroup" => support,
            "equal" => evidence.iter().any(|e| e.claim.is_none()),
            "strict-subgroup" => support && refuted,
            _ => refuted,
        };
    let strictness = match relation {
        "strict-subgroup" => Some("proved".to_string()),
        _ => None,
    };
    InclusionEdge {
        lower: lower.into(),
        upper: upper.into(),
        relation: relation.into(),
        strictness,
        statement: statement.into(),
        evidence,
        valid,
    }
}

/// Build every bundle with default arguments, run its claims, and assemble the edges.
pub fn inclusion_diagram(p: &Params) -> Result<Diagram> {
    let mut map = BTreeMap::new();
    for name in NAMES {
        let b = build(name, &BuildArgs::defaults(name), p)?;
        for r in run_claims(&b)? {
            map.insert((r.bundle.clone(), r.id.clone()), r);
        }
    }
    let r = Results(map);
    let c = |b: &str, id: &str| r.cite(b, id);
    use Rule::*;

    let edges = vec![
        edge("Aut(R)", "Aut1(R)", "strict-subgroup", "a permutation changing one adjacency is in Aut1 but not Aut", vec![
            rule(Definitional),
            c("chain", "pair-in-aut1"),
            c("chain", "pair-not-in-aut"),
        ]),
        edge("Aut1(R)", "Aut2(R)", "strict-subgroup", "flipping a perfect matching changes one adjacency at each vertex, infinitely many in all", vec![
            rule(Definitional),
            c("chain", "matching-in-aut2"),
            c("chain", "matching-not-in-aut1"),
        ]),
        edge("Aut2(R)", "Aut3(R)", "strict-subgroup", "switching at v fixes v and changes infinitely many adjacencies there", vec![
            rule(Definitional),
            c("g1", "in-aut3"),
            c("g1", "not-in-aut2"),
            c("finitary", "in-aut3"),
            c("finitary", "not-in-aut2"),
        ]),
        edge("Aut2(R)", "Aut(F_R)", "subgroup", "finitely many changes at each vertex keep the neighbourhood filter", vec![
            rule(FiniteAtEachVertex),
            c("chain", "matching-in-filter-stabilizer"),
        ]),
        edge("Aut3(R)", "Aut(F_R)", "incomparable", "switching at v is in Aut3 but not Aut(F_R); complementing within the non-neighbours of v is the reverse", vec![
            c("g1", "in-aut3"),
            c("g1", "not-in-filter-stabilizer"),
            c("g2", "in-filter-stabilizer"),
            c("g2", "not-in-aut3"),
        ]),
        edge("FSym(R)", "Aut3(R) ∩ Aut(F_R)", "strict-subgroup", "finitary permutations lie in both; the matching flip lies in both and is not finitary", vec![
            rule(FinitarySupport),
            c("finitary", "in-aut3"),
            c("finitary", "in-filter-stabilizer"),
            c("chain", "matching-in-aut2"),
            c("chain", "matching-in-filter-stabilizer"),
            c("finitary", "not-in-aut2"),
        ]),
        edge("FSym(R)", "Aut2(R)", "trivial-intersection", "a nontrivial finitary permutation changes infinitely many adjacencies at a moved vertex", vec![
            rule(FinitaryMoved),
            c("finitary", "not-in-aut2"),
        ]),
        edge("S(R)", "Aut(F_R)", "not-subgroup", "a switching automorphism fixing v maps R(v) onto the strict non-neighbourhood of v", vec![
            c("g1", "in-switching-group"),
            c("g1", "not-in-filter-stabilizer"),
        ]),
        edge("Aut(F_R) ∩ D(R)", "Aut(R)", "equal", "anti-automorphisms move neighbourhoods off the filter", vec![
            rule(AntiAutomorphismDisjoint),
            c("antiauto", "in-duality-group"),
            c("antiauto", "not-in-filter-stabilizer"),
        ]),
        edge("Aut(F_R) ∩ S(R)", "Aut(R)", "equal", "a nontrivial switching automorphism does not stabilize the filter", vec![
            rule(SwitchingNotFilter),
            c("g1", "in-switching-group"),
            c("g1", "not-in-filter-stabilizer"),
        ]),
        edge("Aut(H)", "FAut(H)", "strict-subgroup", "a transposition maps a neighbourhood to a set with a universal vertex", vec![
            rule(Definitional),
            c("finitary", "in-faut-h"),
            c("finitary", "not-in-aut-h"),
            c("lpsct_c", "E-is-a-copy"),
            c("lpsct_c", "Eg-is-not-a-copy"),
        ]),
        edge("Aut2(R)", "Aut(H)", "subgroup", "finitely many changes at each vertex map copies of R to copies of R", vec![
            rule(FiniteAtEachVertex),
            c("chain", "matching-in-aut-h"),
        ]),
        edge("Aut3(R)", "FAut(H)", "subgroup", "finitely many changes away from a finite set give a global exceptional set", vec![
            rule(CofiniteStability),
            c("finitary", "in-aut3"),
            c("finitary", "in-faut-h"),
        ]),
        edge("FSym(R)", "FAut(H)", "subgroup", "the support of a finitary permutation is a global exceptional set", vec![
            rule(FinitarySupport),
            c("finitary", "in-faut-h"),
        ]),
        edge("FSym(R)", "Aut(H)", "trivial-intersection", "every nontrivial finitary permutation maps some copy of R to a set with a universal vertex", vec![
            rule(FinitaryUniversalImage),
            c("finitary", "not-in-aut-h"),
            c("lpsct_c", "Eg-is-not-a-copy"),
        ]),
        edge("D(R)", "Aut(H)", "strict-subgroup", "dualities preserve copies of R; the matching flip also does and is not a duality", vec![
            rule(SelfComplementary),
            c("antiauto", "in-aut-h"),
            c("chain", "matching-in-aut-h"),
            c("chain", "matching-not-in-duality-group"),
        ]),
        edge("S(R)", "Aut(H)", "not-subgroup", "after switching, a copy of R can gain an isolated vertex", vec![
            c("g4", "E-is-a-copy"),
            c("g4", "switched-is-a-copy"),
            c("g4", "q-isolated-after-switching"),
            c("g4", "E-not-a-copy-after-switching"),
        ]),
        edge("S(R)", "Aut*(H)", "subgroup", "removing a finite set repairs a switched copy of R", vec![
            rule(SwitchingRepair),
            c("g4", "neighbourhood-switch-repair"),
        ]),
        edge("B(R)", "Aut*(H)", "strict-subgroup", "the matching flip preserves copies of R and changes 5-parity", vec![
            rule(SwitchingRepair),
            rule(SelfComplementary),
            c("chain", "matching-in-aut-h"),
            c("chain", "matching-not-in-b"),
        ]),
        edge("S(R)", "FAut(H)", "not-subgroup", "a switching automorphism whose exceptional sets cannot be chosen uniformly", vec![
            c("g5", "in-switching-group"),
            c("g5", "no-global-exceptional-set-below-4"),
            c("g5", "no-global-exceptional-set-below-16"),
        ]),
        edge("FAut(H)", "Aut*(H)", "strict-subgroup", "the staged switching automorphism lies in Aut*(H) and not in FAut(H)", vec![
            rule(Definitional),
            rule(SwitchingRepair),
            c("g5", "in-switching-group"),
            c("g5", "no-global-exceptional-set-below-16"),
        ]),
        edge("Aut(H).FSym(R)", "FAut(H)", "subgroup", "both factors lie in FAut(H); whether the inclusion is proper is open", vec![
            rule(Definitional),
            rule(FinitarySupport),
            c("finitary", "in-faut-h"),
        ])
        .open(),
        edge("Aut(H).FSym(R)", "Aut*(H)", "strict-subgroup", "the staged switching automorphism is outside FAut(H), which contains the product", vec![
            rule(Definitional),
            rule(SwitchingRepair),
            c("g5", "in-switching-group"),
            c("g5", "no-global-exceptional-set-below-16"),
        ]),
        edge("Aut(F_R)", "Aut*(H)", "not-subgroup", "a filter automorphism maps a copy of R onto a set that no finite removal repairs", vec![
            c("g6", "in-filter-stabilizer"),
            c("g6", "E-is-a-copy"),
            c("g6", "no-exceptional-set-for-E"),
        ]),
    ];
    Ok(Diagram { schema: SCHEMA, params: *p, edges })
}
