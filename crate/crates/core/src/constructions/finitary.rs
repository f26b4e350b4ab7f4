//! Finitary permutations, given by disjoint cycles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rado::{join, Vertex};
use crate::table::{PermTable, Provenance};
use crate::views::GraphView;

/// `(0,1,2)(3,4)`; the identity is `()`.
pub fn render_cycles(cycles: &[Vec<Vertex>]) -> String {
    let parts: Vec<String> = cycles.iter().filter(|c| c.len() > 1).map(|c| format!("({})", join(c))).collect();
    if parts.is_empty() {
        "()".to_string()
    } else {
        parts.concat()
    }
}

pub fn parse_cycles(text: &str) -> Result<Vec<Vec<Vertex>>> {
    let bad = |m: &str| Error::Parse { line: 1, msg: format!("cycles {text:?}: {m}") };
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = inner.find(')').ok_or_else(|| bad("missing ')'"))?;
        let body = inner[..close].trim();
        if !body.is_empty() {
            let cycle = body
                .split(',')
                .map(|s| s.trim().parse::<Vertex>().map_err(|_| bad("bad vertex")))
                .collect::<Result<Vec<_>>>()?;
            out.push(cycle);
        }
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}

/// Cycles recorded in a finitary table's provenance, in the table's own orientation.
pub fn finitary_cycles(p: &Provenance) -> Option<Vec<Vec<Vertex>>> {
    if p.construction != "finitary" {
        return None;
    }
    let mut cycles = parse_cycles(p.param("cycles").unwrap_or("()")).ok()?;
    if p.param("orientation") == Some("inverse") {
        for c in &mut cycles {
            c.reverse();
        }
    }
    Some(cycles)
}

/// Image of `v` under the permutation given by `cycles`.
pub fn apply(cycles: &[Vec<Vertex>], v: Vertex) -> Vertex {
    for c in cycles {
        if let Some(i) = c.iter().position(|&x| x == v) {
            return c[(i + 1) % c.len()];
        }
    }
    v
}

/// The finitary permutation as a table. Pairs cover its support; every other
/// vertex is fixed and answered lazily, so any window is materialized.
pub fn build_finitary(cycles: &[Vec<Vertex>]) -> Result<PermTable> {
    let mut seen = BTreeSet::new();
    for c in cycles {
        for &x in c {
            if !seen.insert(x) {
                return Err(Error::PreconditionViolated(format!("vertex {x} appears in two cycles")));
            }
        }
    }
    let cycles: Vec<Vec<Vertex>> = cycles.iter().filter(|c| c.len() > 1).cloned().collect();
    let top = seen.iter().next_back().map_or(0, |&m| m + 1);
    let mut t = PermTable::new(
        Provenance::new("finitary").with("cycles", render_cycles(&cycles)),
        GraphView::Base,
        GraphView::Base,
    );
    t.pairs = (0..top).map(|v| (v, apply(&cycles, v))).collect();
    t.depth = top as u64;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = build_finitary(&[vec![0, 1]]).unwrap();
        assert_eq!((t.image(0), t.image(1), t.image(2), t.image(1000)), (Some(1), Some(0), Some(2), Some(1000)));
        let id = build_finitary(&[]).unwrap();
        assert!(id.pairs.is_empty() && id.image(7) == Some(7));
        let t = build_finitary(&[vec![0, 1, 2], vec![3, 4]]).unwrap();
        let img: Vec<_> = (0..6).map(|v| t.image(v).unwrap()).collect();
        assert_eq!(img, vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(t.preimage(0), Some(2));
        assert!(build_finitary(&[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn inverse_and_text() {
        let t = build_finitary(&[vec![0, 1, 2]]).unwrap();
        let inv = t.inverse();
        for v in 0..8 {
            assert_eq!(inv.image(t.image(v).unwrap()), Some(v));
        }
        assert_eq!(inv.image(100), Some(100));
        let back = PermTable::from_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert_eq!(parse_cycles("(0,1,2)(3,4)").unwrap(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(parse_cycles("()").unwrap(), Vec::<Vec<Vertex>>::new());
    }
}
