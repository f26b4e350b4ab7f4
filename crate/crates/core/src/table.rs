//! Finite materializations of permutations, with provenance and a text format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rado::Vertex;
use crate::syntax::parse_view;
use crate::views::GraphView;

/// Construction id followed by `key=value` parameters, e.g. `finitary cycles=(0,1)(2,3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub construction: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(construction: &str) -> Self {
        Provenance { construction: construction.to_string(), params: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Self {
        let mut words = text.split_whitespace();
        let construction = words.next().unwrap_or("").to_string();
        let params = words
            .map(|w| match w.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => (w.to_string(), String::new()),
            })
            .collect();
        Provenance { construction, params }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.construction)?;
        for (k, v) in &self.params {
            if v.is_empty() {
                write!(f, " {k}")?;
            } else {
                write!(f, " {k}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTable {
    pub provenance: Provenance,
    pub source: GraphView,
    pub target: GraphView,
    pub depth: u64,
    pub pairs: BTreeMap<Vertex, Vertex>,
    /// Why the construction stopped early, if it did.
    pub stalled: Option<String>,
}

impl PermTable {
    pub fn new(provenance: Provenance, source: GraphView, target: GraphView) -> Self {
        PermTable { provenance, source, target, depth: 0, pairs: BTreeMap::new(), stalled: None }
    }

    pub fn identity(window: Vertex) -> Self {
        let mut t = PermTable::new(Provenance::new("finitary").with("cycles", "()"), GraphView::Base, GraphView::Base);
        t.pairs = (0..window).map(|i| (i, i)).collect();
        t
    }

    /// Image of `v`, from the table or from a lazy description of the construction.
    pub fn image(&self, v: Vertex) -> Option<Vertex> {
        self.pairs
            .get(&v)
            .copied()
            .or_else(|| crate::constructions::lazy_image(&self.provenance, v, false))
    }

    pub fn preimage(&self, w: Vertex) -> Option<Vertex> {
        if let Some(v) = crate::constructions::lazy_image(&self.provenance, w, true) {
            return Some(v);
        }
        self.pairs.iter().find(|(_, &b)| b == w).map(|(&a, _)| a)
    }

    /// Least `i < window` without an image, or `window` if all of `[0,window)` is covered.
    pub fn covered_within(&self, window: Vertex) -> Vertex {
        (0..window).find(|&i| self.image(i).is_none()).unwrap_or(window)
    }

    /// Fail unless `[0,window)` has images.
    pub fn require(&self, window: Vertex) -> Result<()> {
        let covered = self.covered_within(window);
        if covered < window {
            return Err(Error::NotMaterialized { window, covered });
        }
        Ok(())
    }

    /// The inverse permutation, as far as materialized.
    pub fn inverse(&self) -> PermTable {
        let flipped = match self.provenance.param("orientation") {
            Some("inverse") => {
                let mut p = self.provenance.clone();
                p.params.retain(|(k, _)| k != "orientation");
                p
            }
            _ => self.provenance.clone().with("orientation", "inverse"),
        };
        PermTable {
            provenance: flipped,
            source: self.target.clone(),
            target: self.source.clone(),
            depth: self.depth,
            pairs: self.pairs.iter().map(|(&a, &b)| (b, a)).collect(),
            stalled: self.stalled.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# provenance: {}", self.provenance);
        let _ = writeln!(s, "# source: {}", self.source);
        let _ = writeln!(s, "# target: {}", self.target);
        let _ = writeln!(s, "# depth: {}", self.depth);
        if let Some(r) = &self.stalled {
            let _ = writeln!(s, "# stalled: {r}");
        }
        for (a, b) in &self.pairs {
            let _ = writeln!(s, "{a}\t{b}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut header: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut pairs = BTreeMap::new();
        let mut used = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim_end();
            if l.is_empty() {
                continue;
            }
            if let Some(rest) = l.strip_prefix('#') {
                let (k, v) = rest
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| err(line, "header needs `key: value`".into()))?;
                header.insert(k.trim(), (line, v.trim()));
                continue;
            }
            let (a, b) = l
                .split_once('\t')
                .ok_or_else(|| err(line, "expected `i<TAB>g(i)`".into()))?;
            let a: Vertex = a.trim().parse().map_err(|_| err(line, format!("bad vertex {a:?}")))?;
            let b: Vertex = b.trim().parse().map_err(|_| err(line, format!("bad vertex {b:?}")))?;
            if let Some(&prev) = pairs.keys().next_back() {
                if a <= prev {
                    return Err(err(line, format!("rows must be sorted by source vertex, {a} after {prev}")));
                }
            }
            if let Some(other) = used.insert(b, a) {
                return Err(err(line, format!("image {b} already taken by {other}")));
            }
            pairs.insert(a, b);
        }
        let get = |k: &str| header.get(k).copied().ok_or_else(|| err(1, format!("missing header `{k}`")));
        let view = |k: &str| -> Result<GraphView> {
            let (line, v) = get(k)?;
            parse_view(v).map_err(|e| match e {
                Error::Parse { msg, .. } => err(line, msg),
                other => other,
            })
        };
        let (dl, d) = get("depth")?;
        Ok(PermTable {
            provenance: Provenance::parse(get("provenance")?.1),
            source: view("source")?,
            target: view("target")?,
            depth: d.parse().map_err(|_| err(dl, format!("bad depth {d:?}")))?,
            pairs,
            stalled: header.get("stalled").map(|(_, v)| v.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut t = PermTable::new(
            Provenance::new("g1").with("v", 0),
            GraphView::Base,
            parse_view("switch(base, {0})").unwrap(),
        );
        t.pairs.insert(0, 0);
        t.pairs.insert(1, 2);
        t.depth = 1;
        t.stalled = Some("no witness within bound while extending at 7".into());
        let text = t.to_text();
        assert_eq!(PermTable::from_text(&text).unwrap(), t);
        assert!(text.starts_with("# provenance: g1 v=0\n"));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "# provenance: g1\n# source: base\n# target: base\n# depth: 2\n0\t0\n1 x\n";
        match PermTable::from_text(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
        let dup = "# provenance: g1\n# source: base\n# target: base\n# depth: 2\n0\t0\n1\t0\n";
        assert!(matches!(PermTable::from_text(dup), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn inverse_twice_is_identity() {
        let mut t = PermTable::new(Provenance::new("g2").with("v", 0), GraphView::Base, GraphView::Base);
        t.pairs.insert(3, 5);
        assert_eq!(t.inverse().inverse(), t);
        assert_eq!(t.inverse().image(5), Some(3));
    }
}
