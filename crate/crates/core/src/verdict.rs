//! Three-valued, certificate-carrying outcomes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rado::{DisjointPair, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Refuted,
    SupportedUpTo,
    ExactlySettled,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Refuted => "refuted",
            VerdictKind::SupportedUpTo => "supported_up_to",
            VerdictKind::ExactlySettled => "exactly_settled",
        })
    }
}

/// Finite evidence attached to a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Vertex { vertex: Vertex },
    Pair { a: Vertex, b: Vertex },
    Split { u: Vec<Vertex>, v: Vec<Vertex> },
    Set { vertices: Vec<Vertex> },
    /// One certificate per candidate exceptional set.
    PerSet { cases: Vec<SetCase> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCase {
    pub set: Vec<Vertex>,
    pub edge: String,
    pub certificate: Box<Certificate>,
}

impl Certificate {
    pub fn split(p: &DisjointPair) -> Self {
        Certificate::Split { u: p.u().to_vec(), v: p.v().to_vec() }
    }

    pub fn as_split(&self) -> Option<DisjointPair> {
        match self {
            Certificate::Split { u, v } => DisjointPair::new(u.clone(), v.clone()).ok(),
            _ => None,
        }
    }
}

/// The fixed whitelist of symbolic arguments that may settle a claim exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Witnesses above 127 depend only on their low 128 bits; every pattern was ruled out.
    BitPatternExhaustion,
    /// Every element of Nbhd(v) is adjacent to v.
    UniversalVertex,
    /// A greedy independent stream only admits elements with no edge to earlier ones.
    IndependentStream,
    /// An isomorphism maps an isolated vertex of a set to an isolated vertex of the image.
    IsolationTransport,
    /// a_k !~ b_n and c_k ~ b_n for k >= n; switching over C isolates b_n in E_n.
    StagedIsolation,
    /// Each stage chooses its triple under the adjacency constraints a_n !~ b_k, c_n ~ b_k.
    StagedConstraints,
    /// R(v) and the strict non-neighbourhood of v are disjoint, so the filter is proper.
    NeighbourhoodDisjoint,
    /// Containment of an intersection of neighbourhoods proved by pattern exhaustion.
    FilterContainment,
    /// g: R -> switch at v with g(v)=v maps R(v) onto the strict non-neighbourhood of v.
    SwitchAtFixedVertex,
    /// An anti-automorphism maps R(v) onto the strict non-neighbourhood of v^g.
    AntiAutomorphismDisjoint,
    /// Complementing inside R^c(v) with v fixed keeps R(v) ∩ R(w)^g = R(v) ∩ R(w^g).
    FlipNonNeighbours,
    /// A map fixing R(v) pointwise has R(w)^g ⊇ R(v) ∩ R(w).
    IdentityOnNeighbourhood,
    /// C(g) equals the flipped pairs of the target view, pulled back along g.
    ChangeSetPullback,
    /// k(3-k) and k(5-k) are even, so switching keeps 3- and 5-parity.
    SwitchingParity,
    /// 6 and 10 are even, so complementing keeps 4- and 5-parity.
    ComplementParity,
    /// An isomorphism between identical views is an automorphism.
    ViewAutomorphism,
    /// A finitary permutation changes adjacencies only at pairs meeting its support.
    FinitarySupport,
    /// A finitary permutation moving v changes infinitely many adjacencies at v.
    FinitaryMoved,
    /// Switching over a finite set changes finitely many adjacencies away from it.
    FiniteSwitch,
    /// Switching or flipping over an infinite set changes infinitely many adjacencies at its members.
    InfiniteChanges,
    /// Flipping the pairs inside a finite set changes finitely many adjacencies.
    FiniteFlip,
    /// Flipping a perfect matching changes one adjacency at each vertex and infinitely many in all.
    MatchingFlip,
    /// Changing all adjacencies at one vertex of a copy of R yields a copy of R.
    SingleVertexSwitch,
    /// The complement of a copy of R is a copy of R.
    SelfComplementary,
    /// Finitely many changes at every vertex keep neighbourhoods inside the filter and copies as copies.
    FiniteAtEachVertex,
    /// Finitely many changes away from a finite set S make S a global exceptional set.
    CofiniteStability,
    /// Switching an edge leaves an edge after removing a finite set.
    SwitchingRepair,
    /// A nontrivial switching automorphism cannot preserve the neighbourhood filter.
    SwitchingNotFilter,
    /// Conjugating a finitary permutation produces an edge mapped to a set with a universal vertex.
    FinitaryUniversalImage,
    /// The inclusion holds by the definitions of the two groups.
    Definitional,
    /// Both change-set identities held on every pair where all terms are computable.
    ChangeSetCalculus,
    /// Complementing within R^c(v) makes a chosen non-neighbour universal in the image of a copy of R.
    NonNeighbourUniversal,
}

impl Rule {
    pub fn id(&self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// The statement this verdict is about.
    pub claim: String,
    pub window: u64,
    pub depth: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Verdict {
    pub fn refuted(claim: impl Into<String>, certificate: Certificate, window: u64, depth: u64) -> Self {
        Verdict {
            kind: VerdictKind::Refuted,
            claim: claim.into(),
            window,
            depth,
            certificate: Some(certificate),
            rule: None,
            note: None,
        }
    }

    pub fn supported(claim: impl Into<String>, window: u64, depth: u64) -> Self {
        Verdict {
            kind: VerdictKind::SupportedUpTo,
            claim: claim.into(),
            window,
            depth,
            certificate: None,
            rule: None,
            note: None,
        }
    }

    pub fn settled(claim: impl Into<String>, rule: Rule, window: u64, depth: u64) -> Self {
        Verdict {
            kind: VerdictKind::ExactlySettled,
            claim: claim.into(),
            window,
            depth,
            certificate: None,
            rule: Some(rule),
            note: None,
        }
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    pub fn with_claim(mut self, claim: impl Into<String>) -> Self {
        self.claim = claim.into();
        self
    }

    pub fn is_refuted(&self) -> bool {
        self.kind == VerdictKind::Refuted
    }

    /// Not refuted.
    pub fn is_positive(&self) -> bool {
        self.kind != VerdictKind::Refuted
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] window={} depth={}", self.kind, self.claim, self.window, self.depth)?;
        if let Some(r) = self.rule {
            write!(f, " rule={}", r.id())?;
        }
        if let Some(c) = &self.certificate {
            write!(f, " cert={}", serde_json::to_string(c).unwrap_or_default())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_bounds() {
        let v = Verdict::supported("x", 64, 3).with_note("n");
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"window\":64") && s.contains("\"depth\":3"));
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rule_ids() {
        assert_eq!(Rule::BitPatternExhaustion.id(), "bit_pattern_exhaustion");
    }
}
