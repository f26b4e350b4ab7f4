//! Monotone construction streams with shared, append-only state.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rado::Vertex;
use crate::views::GraphView;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Step budget for a single settle request, from `RADOKIT_BUDGET` if set.
pub fn step_budget() -> u64 {
    static B: OnceLock<u64> = OnceLock::new();
    *B.get_or_init(|| {
        std::env::var("RADOKIT_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamProperty {
    /// No two members are adjacent in the base graph.
    Independent,
    /// `vertex` is a member with no neighbour inside the set under `view`.
    Isolated { view: GraphView, vertex: Vertex },
}

/// Shared generator behind one or more named streams.
///
/// Keys select a stream within the source. Below `frontier(key)` membership
/// is decided; above it only explicitly produced members are known.
pub trait StreamSource: Send + Sync + fmt::Debug {
    fn lookup(&self, key: &str, z: Vertex) -> Option<bool>;
    fn frontier(&self, key: &str) -> Vertex;
    fn step(&self) -> Result<()>;
    fn known(&self, key: &str) -> Vec<Vertex>;
    fn properties(&self, _key: &str) -> Result<Vec<StreamProperty>> {
        Ok(Vec::new())
    }
}

#[derive(Clone)]
pub struct Stream {
    name: String,
    key: String,
    source: Arc<dyn StreamSource>,
}

impl Stream {
    pub fn new(name: impl Into<String>, key: impl Into<String>, source: Arc<dyn StreamSource>) -> Self {
        Stream { name: name.into(), key: key.into(), source }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<dyn StreamSource> {
        &self.source
    }

    pub fn lookup(&self, z: Vertex) -> Option<bool> {
        self.source.lookup(&self.key, z)
    }

    pub fn frontier(&self) -> Vertex {
        self.source.frontier(&self.key)
    }

    pub fn known(&self) -> Vec<Vertex> {
        self.source.known(&self.key)
    }

    pub fn properties(&self) -> Result<Vec<StreamProperty>> {
        self.source.properties(&self.key)
    }

    /// Decide membership, enumerating as far as needed.
    pub fn member(&self, z: Vertex) -> Result<bool> {
        let budget = step_budget();
        let mut spent = 0;
        loop {
            if let Some(b) = self.lookup(z) {
                return Ok(b);
            }
            if spent >= budget {
                return Err(Error::ResourceExhausted(format!(
                    "stream {} needs more than {budget} steps to decide {z}",
                    self.name
                )));
            }
            self.source.step()?;
            spent += 1;
        }
    }

    /// Enumerate until every vertex `<= z` is decided.
    pub fn settle_through(&self, z: Vertex) -> Result<()> {
        let budget = step_budget();
        let mut spent = 0;
        while self.frontier() <= z {
            if spent >= budget {
                return Err(Error::ResourceExhausted(format!(
                    "stream {} needs more than {budget} steps to settle through {z}",
                    self.name
                )));
            }
            self.source.step()?;
            spent += 1;
        }
        Ok(())
    }

    /// Members below `n`, settling the prefix first.
    pub fn members_below(&self, n: Vertex) -> Result<Vec<Vertex>> {
        if n > 0 {
            self.settle_through(n - 1)?;
        }
        Ok(self.known().into_iter().filter(|&x| x < n).collect())
    }
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stream:{}", self.name)
    }
}

impl PartialEq for Stream {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Stream {}

fn registry() -> &'static Mutex<BTreeMap<String, Stream>> {
    static R: OnceLock<Mutex<BTreeMap<String, Stream>>> = OnceLock::new();
    R.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Look a stream up by name, creating the standard construction streams on first use.
pub fn resolve(name: &str) -> Result<Stream> {
    let mut reg = registry().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(s) = reg.get(name) {
        return Ok(s.clone());
    }
    let created = crate::constructions::standard_streams(name)
        .ok_or_else(|| Error::UnknownStream(name.to_string()))?;
    for s in created {
        reg.entry(s.name().to_string()).or_insert(s);
    }
    reg.get(name).cloned().ok_or_else(|| Error::UnknownStream(name.to_string()))
}

/// Make a stream resolvable by name. An existing entry with the same name wins.
pub fn register(stream: Stream) -> Stream {
    let mut reg = registry().lock().unwrap_or_else(|e| e.into_inner());
    reg.entry(stream.name().to_string()).or_insert(stream).clone()
}

/// A finite, fully decided stream. Handy for tests and table images.
#[derive(Debug)]
pub struct FixedSource {
    members: Vec<Vertex>,
    frontier: Vertex,
    props: Vec<StreamProperty>,
}

impl FixedSource {
    /// `members` below `frontier` are exactly the decided prefix; larger ones are known members.
    pub fn new(mut members: Vec<Vertex>, frontier: Vertex, props: Vec<StreamProperty>) -> Self {
        members.sort_unstable();
        members.dedup();
        FixedSource { members, frontier, props }
    }
}

impl StreamSource for FixedSource {
    fn lookup(&self, _key: &str, z: Vertex) -> Option<bool> {
        if self.members.binary_search(&z).is_ok() {
            Some(true)
        } else if z < self.frontier {
            Some(false)
        } else {
            None
        }
    }

    fn frontier(&self, _key: &str) -> Vertex {
        self.frontier
    }

    fn step(&self) -> Result<()> {
        Err(Error::ResourceExhausted("fixed stream cannot be extended".into()))
    }

    fn known(&self, _key: &str) -> Vec<Vertex> {
        self.members.clone()
    }

    fn properties(&self, _key: &str) -> Result<Vec<StreamProperty>> {
        Ok(self.props.clone())
    }
}
