//! The staged A/B/C/D construction: a switching whose isomorphism keeps no
//! global finite exceptional set.
//!
//! One run is shared by every `g5.*` stream. It is carried out in full when
//! first needed and is immutable afterwards, so membership answers never
//! depend on query order. Freshness means "least vertex not used so far":
//! every vertex below the least unused one is decided, and ids stay inside
//! u128 for far longer than with strictly increasing choices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::rado::{adjacent, enumerate_pair, join, DisjointPair, Vertex};
use crate::sets::VertexSet;
use crate::stream::{Stream, StreamProperty, StreamSource};
use crate::views::GraphView;
use crate::witness::{Search, Searcher};

/// Stages attempted before the run stops on its own.
pub const MAX_STAGES: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    A(usize),
    B(usize),
    C(usize),
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Added {
    /// Triple index, then a, b, c and the extra D point.
    Triple { index: usize, a: Vertex, b: Vertex, c: Vertex, d: Vertex },
    /// Vertices of U∪V routed to D, then the D witness.
    Routed { routed: Vec<Vertex>, d: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub pair: DisjointPair,
    pub added: Added,
}

impl fmt::Display for StageRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {} | pair ({}) | ", self.stage, self.pair)?;
        match &self.added {
            Added::Triple { a, b, c, d, .. } => write!(f, "case a | added a={a} b={b} c={c} d={d}"),
            Added::Routed { routed, d } => {
                let mut all = routed.clone();
                all.push(*d);
                write!(f, "case b | added d={}", join(&all))
            }
        }
    }
}

#[derive(Debug)]
pub struct G5Run {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub d: Vec<Vertex>,
    pub log: Vec<StageRecord>,
    /// Why the run stopped before `MAX_STAGES`, with the stage number.
    pub failure: Option<(usize, String)>,
    owner: BTreeMap<Vertex, Block>,
    frontier: Vertex,
}

impl G5Run {
    /// Run the construction for at most `stages` stages.
    pub fn run(stages: usize) -> G5Run {
        let mut r = G5Run {
            a: Vec::new(),
            b: Vec::new(),
            c: Vec::new(),
            d: Vec::new(),
            log: Vec::new(),
            failure: None,
            owner: BTreeMap::new(),
            frontier: 0,
        };
        for n in 0..stages {
            if let Err(e) = r.stage(n) {
                r.failure = Some((n, e.to_string()));
                break;
            }
        }
        r
    }

    pub fn block(&self, z: Vertex) -> Option<Block> {
        self.owner.get(&z).copied()
    }

    /// Every vertex below this one is in A∪B∪C∪D.
    pub fn frontier(&self) -> Vertex {
        self.frontier
    }

    pub fn triples(&self) -> usize {
        self.b.len()
    }

    /// (a_n, b_n, c_n) for 1-based `n`.
    pub fn triple(&self, n: usize) -> Option<(Vertex, Vertex, Vertex)> {
        (n >= 1 && n <= self.b.len()).then(|| (self.a[n - 1], self.b[n - 1], self.c[n - 1]))
    }

    fn take(&mut self, z: Vertex, block: Block) {
        self.owner.insert(z, block);
        match block {
            Block::A(_) => self.a.push(z),
            Block::B(_) => self.b.push(z),
            Block::C(_) => self.c.push(z),
            Block::D => self.d.push(z),
        }
        while self.owner.contains_key(&self.frontier) {
            self.frontier += 1;
        }
    }

    fn witness(&self, u: &[Vertex], v: &[Vertex]) -> Result<Vertex> {
        let used: BTreeSet<Vertex> = self.owner.keys().copied().collect();
        let mut s = Searcher::new(&GraphView::Base);
        match s.find(u, v, &used, Vertex::MAX, true)? {
            Search::Found(z) => Ok(z),
            _ => Err(Error::ResourceExhausted(format!(
                "no unused witness below 2^128 for ({};{})",
                join(u),
                join(v)
            ))),
        }
    }

    fn in_abc(&self, z: Vertex) -> bool {
        matches!(self.block(z), Some(Block::A(_) | Block::B(_) | Block::C(_)))
    }

    fn stage(&mut self, n: usize) -> Result<()> {
        let pair = enumerate_pair(n as u128);
        let (u, v) = (pair.u().to_vec(), pair.v().to_vec());
        let both: Vec<Vertex> = u.iter().chain(&v).copied().collect();
        let bs: Vec<Vertex> = both.iter().copied().filter(|&z| matches!(self.block(z), Some(Block::B(_)))).collect();
        let added = if both.iter().all(|&z| self.in_abc(z)) && bs.len() <= 1 {
            let index = self.b.len() + 1;
            let b_in_u = bs.first().is_some_and(|x| u.contains(x));
            let (a, b, c);
            if b_in_u {
                let mut uu = u.clone();
                uu.extend(&self.b);
                c = self.witness(&uu, &v)?;
                self.take(c, Block::C(index));
                b = self.witness(&[c], &[])?;
                self.take(b, Block::B(index));
                a = self.witness(&[], &self.b.clone())?;
                self.take(a, Block::A(index));
            } else {
                let mut vv = v.clone();
                vv.extend(&self.b);
                a = self.witness(&u, &vv)?;
                self.take(a, Block::A(index));
                b = self.witness(&[], &[a])?;
                self.take(b, Block::B(index));
                c = self.witness(&self.b.clone(), &[])?;
                self.take(c, Block::C(index));
            }
            let d = self.witness(&[], &[])?;
            self.take(d, Block::D);
            Added::Triple { index, a, b, c, d }
        } else {
            let routed: Vec<Vertex> = both.iter().copied().filter(|&z| self.block(z).is_none()).collect();
            for &z in &routed {
                self.take(z, Block::D);
            }
            let in_c = |z: &Vertex| matches!(self.block(*z), Some(Block::C(_)));
            let uu: Vec<Vertex> = u.iter().filter(|z| !in_c(z)).chain(v.iter().filter(|z| in_c(z))).copied().collect();
            let vv: Vec<Vertex> = v.iter().filter(|z| !in_c(z)).chain(u.iter().filter(|z| in_c(z))).copied().collect();
            let d = self.witness(&uu, &vv)?;
            self.take(d, Block::D);
            Added::Routed { routed, d }
        };
        self.log.push(StageRecord { stage: n, pair, added });
        Ok(())
    }

    /// ∀n ∀k≤n: a_n ≁ b_k and c_n ∼ b_k, re-read from the adjacency oracle.
    pub fn condition_one(&self) -> std::result::Result<usize, (usize, usize)> {
        let mut checks = 0;
        for n in 0..self.b.len() {
            for k in 0..=n {
                if adjacent(self.a[n], self.b[k]) || !adjacent(self.c[n], self.b[k]) {
                    return Err((n + 1, k + 1));
                }
                checks += 2;
            }
        }
        Ok(checks)
    }
}

/// The shared run behind the `g5.*` streams.
#[derive(Debug)]
pub struct G5Source {
    run: G5Run,
    me: Weak<G5Source>,
}

impl G5Source {
    pub fn run(&self) -> &G5Run {
        &self.run
    }

    pub fn stream(self: &Arc<Self>, key: &str) -> Stream {
        Stream::new(format!("g5.{key}"), key, self.clone())
    }

    fn e_index(key: &str) -> Option<usize> {
        key.strip_prefix("E.").and_then(|n| n.parse().ok())
    }
}

pub fn source() -> Arc<G5Source> {
    static S: OnceLock<Arc<G5Source>> = OnceLock::new();
    S.get_or_init(|| Arc::new_cyclic(|me| G5Source { run: G5Run::run(MAX_STAGES), me: me.clone() }))
        .clone()
}

impl StreamSource for G5Source {
    fn lookup(&self, key: &str, z: Vertex) -> Option<bool> {
        let block = match self.run.block(z) {
            Some(b) => b,
            None => return if z < self.run.frontier { Some(false) } else { None },
        };
        Some(match (key, block) {
            ("A", Block::A(_)) | ("B", Block::B(_)) | ("C", Block::C(_)) | ("D", Block::D) => true,
            _ => match (G5Source::e_index(key), block) {
                (Some(n), Block::A(k) | Block::C(k)) => k >= n,
                (Some(n), Block::B(k)) => k == n,
                _ => false,
            },
        })
    }

    fn frontier(&self, _key: &str) -> Vertex {
        self.run.frontier
    }

    fn step(&self) -> Result<()> {
        Err(Error::ResourceExhausted(match &self.run.failure {
            Some((n, why)) => format!("staged construction stopped at stage {n}: {why}"),
            None => format!("staged construction stops after {MAX_STAGES} stages"),
        }))
    }

    fn known(&self, key: &str) -> Vec<Vertex> {
        let r = &self.run;
        let mut out: Vec<Vertex> = match (key, G5Source::e_index(key)) {
            ("A", _) => r.a.clone(),
            ("B", _) => r.b.clone(),
            ("C", _) => r.c.clone(),
            ("D", _) => r.d.clone(),
            (_, Some(n)) if n >= 1 => r
                .a
                .iter()
                .skip(n - 1)
                .chain(r.c.iter().skip(n - 1))
                .chain(r.b.get(n - 1))
                .copied()
                .collect(),
            _ => Vec::new(),
        };
        out.sort_unstable();
        out
    }

    fn properties(&self, key: &str) -> Result<Vec<StreamProperty>> {
        let (Some(n), Some(me)) = (G5Source::e_index(key), self.me.upgrade()) else {
            return Ok(Vec::new());
        };
        Ok(match self.run.triple(n) {
            Some((_, b, _)) => vec![StreamProperty::Isolated { view: switched_view_of(&me), vertex: b }],
            None => Vec::new(),
        })
    }
}

fn switched_view_of(src: &Arc<G5Source>) -> GraphView {
    GraphView::switch(GraphView::Base, VertexSet::Stream(src.stream("C")))
}

/// σ(R): the base graph switched over C.
pub fn switched_view() -> GraphView {
    switched_view_of(&source())
}

pub fn set(key: &str) -> VertexSet {
    VertexSet::Stream(source().stream(key))
}

/// E_n = {a_k : k ≥ n} ∪ {b_n} ∪ {c_k : k ≥ n}, for 1-based n.
pub fn edge(n: usize) -> VertexSet {
    set(&format!("E.{n}"))
}

/// Streams for a `g5.` name, or None if the name is not one of them.
pub fn streams(name: &str) -> Option<Vec<Stream>> {
    let key = name.strip_prefix("g5.")?;
    let ok = matches!(key, "A" | "B" | "C" | "D") || G5Source::e_index(key).is_some_and(|n| n >= 1);
    ok.then(|| vec![source().stream(key)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_one_and_disjointness() {
        let r = G5Run::run(12);
        assert!(r.failure.is_none());
        assert!(r.condition_one().is_ok());
        let mut all: Vec<Vertex> = r.a.iter().chain(&r.b).chain(&r.c).chain(&r.d).copied().collect();
        let n = all.len();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), n);
        assert!((0..r.frontier()).all(|z| r.block(z).is_some()));
    }

    #[test]
    fn first_stage() {
        let r = G5Run::run(1);
        // (∅,∅): a is the least vertex, b the least non-neighbour of a, c the least neighbour of b
        assert_eq!(r.log[0].to_string(), "stage 0 | pair ({};{}) | case a | added a=0 b=2 c=1 d=3");
    }

    #[test]
    fn isolation_in_switched_view() {
        let src = source();
        let view = switched_view();
        let run = src.run();
        for n in 1..=6 {
            let (_, b, _) = run.triple(n).unwrap();
            let e = edge(n);
            for z in run.a.iter().chain(&run.c).copied().filter(|&z| e.member(z).unwrap()) {
                assert!(!view.adjacent(b, z).unwrap(), "b_{n}={b} ~ {z}");
            }
            assert_eq!(e.provably_isolated(&view).unwrap(), Some(b));
        }
    }
}
