//! A filter-preserving block map that sends an edge onto an independent set.
//!
//! Inside the non-neighbours of v: E = W({w};{v}) with w the least
//! non-neighbour, D a greedy independent set avoiding v and w, A the rest.
//! The map fixes v and R(v), sends E onto D and A∪D onto A∪E, each in order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rado::{adjacent, Vertex};
use crate::sets::VertexSet;
use crate::stream::{Stream, StreamProperty, StreamSource};
use crate::table::{PermTable, Provenance};
use crate::views::GraphView;

/// Least non-neighbour of v other than v.
pub fn partner(v: Vertex) -> Vertex {
    (0..).find(|&w| w != v && !adjacent(v, w)).expect("non-neighbours exist")
}

#[derive(Debug, Default)]
struct Greedy {
    members: Vec<Vertex>,
    next: Vertex,
}

/// Greedy independent subset of W(∅;{v,w}), scanned in increasing order.
#[derive(Debug)]
pub struct GreedySource {
    v: Vertex,
    w: Vertex,
    state: Mutex<Greedy>,
}

impl GreedySource {
    fn new(v: Vertex) -> Self {
        GreedySource { v, w: partner(v), state: Mutex::new(Greedy::default()) }
    }

    fn eligible(&self, z: Vertex) -> bool {
        z != self.v && z != self.w && !adjacent(z, self.v) && !adjacent(z, self.w)
    }
}

impl StreamSource for GreedySource {
    fn lookup(&self, _key: &str, z: Vertex) -> Option<bool> {
        let s = self.state.lock().unwrap_or_else(|e| e.into_inner());
        if s.members.binary_search(&z).is_ok() {
            Some(true)
        } else if z < s.next {
            Some(false)
        } else {
            None
        }
    }

    fn frontier(&self, _key: &str) -> Vertex {
        self.state.lock().unwrap_or_else(|e| e.into_inner()).next
    }

    fn step(&self) -> Result<()> {
        let mut s = self.state.lock().unwrap_or_else(|e| e.into_inner());
        let z = s.next;
        if self.eligible(z) && s.members.iter().all(|&m| !adjacent(m, z)) {
            s.members.push(z);
        }
        s.next = z.checked_add(1).ok_or_else(|| Error::ResourceExhausted("vertex ids exhausted".into()))?;
        Ok(())
    }

    fn known(&self, _key: &str) -> Vec<Vertex> {
        self.state.lock().unwrap_or_else(|e| e.into_inner()).members.clone()
    }

    fn properties(&self, _key: &str) -> Result<Vec<StreamProperty>> {
        Ok(vec![StreamProperty::Independent])
    }
}

fn sources() -> &'static Mutex<BTreeMap<Vertex, Arc<GreedySource>>> {
    static S: OnceLock<Mutex<BTreeMap<Vertex, Arc<GreedySource>>>> = OnceLock::new();
    S.get_or_init(|| Mutex::new(BTreeMap::new()))
}

pub fn independent_stream(v: Vertex) -> Stream {
    let mut m = sources().lock().unwrap_or_else(|e| e.into_inner());
    let src = m.entry(v).or_insert_with(|| Arc::new(GreedySource::new(v))).clone();
    Stream::new(format!("g6.D.{v}"), "", src)
}

pub fn streams(name: &str) -> Option<Vec<Stream>> {
    let v = name.strip_prefix("g6.D.")?.parse().ok()?;
    Some(vec![independent_stream(v)])
}

/// The edge E and the independent set D for base vertex v.
pub fn blocks(v: Vertex) -> (VertexSet, VertexSet) {
    let w = partner(v);
    let e = VertexSet::Witness(crate::rado::DisjointPair::new(vec![w], vec![v]).expect("w != v"));
    (e, VertexSet::Stream(independent_stream(v)))
}

/// Which part of the partition a vertex lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Fixed,
    A,
    E,
    D,
}

struct Parts {
    v: Vertex,
    w: Vertex,
    d: Stream,
}

impl Parts {
    fn part(&self, z: Vertex) -> Result<Part> {
        Ok(if z == self.v || adjacent(z, self.v) {
            Part::Fixed
        } else if adjacent(z, self.w) {
            Part::E
        } else if self.d.member(z)? {
            Part::D
        } else {
            Part::A
        })
    }
}

/// Enumerates one side of the map in increasing order.
struct Walk<'a> {
    parts: &'a Parts,
    take: [Part; 2],
    next: Vertex,
    seen: Vec<Vertex>,
}

impl Walk<'_> {
    fn nth(&mut self, k: usize) -> Result<Vertex> {
        while self.seen.len() <= k {
            let z = self.next;
            if self.take.contains(&self.parts.part(z)?) {
                self.seen.push(z);
            }
            self.next += 1;
        }
        Ok(self.seen[k])
    }

    fn rank(&mut self, z: Vertex) -> Result<usize> {
        while self.next <= z {
            self.nth(self.seen.len())?;
        }
        Ok(self.seen.partition_point(|&x| x < z))
    }
}

/// The block map for base vertex v, on [0,n) and on the preimages of [0,n).
pub fn build_g6(v: Vertex, n: u64) -> Result<PermTable> {
    let (_, d) = blocks(v);
    let VertexSet::Stream(d) = d else { unreachable!() };
    let parts = Parts { v, w: partner(v), d };
    let walk = |take: [Part; 2]| Walk { parts: &parts, take, next: 0, seen: Vec::new() };
    // E → D and A∪D → A∪E, both order-preserving
    let (mut e_src, mut e_dst) = (walk([Part::E, Part::E]), walk([Part::D, Part::D]));
    let (mut a_src, mut a_dst) = (walk([Part::A, Part::D]), walk([Part::A, Part::E]));
    let mut pairs = BTreeMap::new();
    let n = n as Vertex;
    for z in 0..n {
        let img = match parts.part(z)? {
            Part::Fixed => z,
            Part::E => {
                let k = e_src.rank(z)?;
                e_dst.nth(k)?
            }
            Part::A | Part::D => {
                let k = a_src.rank(z)?;
                a_dst.nth(k)?
            }
        };
        pairs.insert(z, img);
    }
    let hit: BTreeSet<Vertex> = pairs.values().copied().collect();
    for y in (0..n).filter(|y| !hit.contains(y)) {
        let pre = match parts.part(y)? {
            Part::Fixed => y,
            Part::D => {
                let k = e_dst.rank(y)?;
                e_src.nth(k)?
            }
            Part::A | Part::E => {
                let k = a_dst.rank(y)?;
                a_src.nth(k)?
            }
        };
        pairs.insert(pre, y);
    }
    let mut t = PermTable::new(Provenance::new("g6").with("v", v), GraphView::Base, GraphView::Base);
    t.pairs = pairs;
    t.depth = n as u64;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_for_zero() {
        assert_eq!(partner(0), 2);
        let (e, d) = blocks(0);
        assert!(e.member(6).unwrap());
        let VertexSet::Stream(d) = d else { panic!() };
        let ds = d.members_below(64).unwrap();
        assert_eq!(&ds[..3], &[8, 10, 16]);
        for (i, &x) in ds.iter().enumerate() {
            assert!(!adjacent(x, 0) && !adjacent(x, 2));
            assert!(ds[..i].iter().all(|&y| !adjacent(x, y)));
        }
    }

    #[test]
    fn block_map_is_injective_and_respects_blocks() {
        let t = build_g6(0, 64).unwrap();
        let imgs: BTreeSet<Vertex> = t.pairs.values().copied().collect();
        assert_eq!(imgs.len(), t.pairs.len());
        assert!((0..64).all(|y| t.preimage(y).is_some()));
        let (e, d) = blocks(0);
        for (&x, &y) in &t.pairs {
            if adjacent(x, 0) || x == 0 {
                assert_eq!(x, y);
            }
            if e.member(x).unwrap() {
                assert!(d.member(y).unwrap());
            }
        }
    }
}
