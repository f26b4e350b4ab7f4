//! Text form of views and sets.
//!
//! ```text
//! view ::= base | switch(view,set) | flipwithin(view,set) | delete(view,ints) | restrict(view,set)
//!        | flipmatching(view)
//! set  ::= {ints} | N(i) | NCS(i) | all | W({ints};{ints}) | set op set | (set) | stream:name
//! op   ::= + | & | - | ^        (left associative, equal precedence)
//! ```
//! Rendering parenthesizes every binary node, so `parse(render(x)) == x`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rado::{join, DisjointPair, Vertex};
use crate::sets::VertexSet;
use crate::stream;
use crate::views::GraphView;

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use VertexSet::*;
        match self {
            Finite(xs) => write!(f, "{{{}}}", join(xs)),
            Nbhd(v) => write!(f, "N({v})"),
            NonNbhdStrict(v) => write!(f, "NCS({v})"),
            All => f.write_str("all"),
            Witness(p) => write!(f, "W({p})"),
            Union(a, b) => write!(f, "({a}+{b})"),
            Intersection(a, b) => write!(f, "({a}&{b})"),
            Difference(a, b) => write!(f, "({a}-{b})"),
            SymDiff(a, b) => write!(f, "({a}^{b})"),
            Stream(s) => write!(f, "stream:{}", s.name()),
        }
    }
}

impl fmt::Display for GraphView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphView::Base => f.write_str("base"),
            GraphView::Switch(g, s) => write!(f, "switch({g},{s})"),
            GraphView::FlipWithin(g, s) => write!(f, "flipwithin({g},{s})"),
            GraphView::Delete(g, d) => {
                let d: Vec<Vertex> = d.iter().copied().collect();
                write!(f, "delete({g},{})", join(&d))
            }
            GraphView::Restrict(g, s) => write!(f, "restrict({g},{s})"),
            GraphView::FlipMatching(g) => write!(f, "flipmatching({g})"),
        }
    }
}

pub fn parse_view(text: &str) -> Result<GraphView> {
    let mut p = Parser::new(text);
    let v = p.view()?;
    p.end()?;
    Ok(v)
}

pub fn parse_set(text: &str) -> Result<VertexSet> {
    let mut p = Parser::new(text);
    let s = p.set()?;
    p.end()?;
    Ok(s)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, msg: format!("column {}: {}", self.pos + 1, msg.into()) })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn int(&mut self) -> Result<Vertex> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("integer {s} out of range")),
        }
    }

    /// Comma-separated integers up to (not including) `close`.
    fn ints(&mut self, close: u8) -> Result<Vec<Vertex>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    fn braced(&mut self) -> Result<Vec<Vertex>> {
        self.expect("{")?;
        let xs = self.ints(b'}')?;
        self.expect("}")?;
        Ok(xs)
    }

    fn view(&mut self) -> Result<GraphView> {
        if self.eat("base") {
            return Ok(GraphView::Base);
        }
        for (kw, k) in [("switch(", 0), ("flipwithin(", 1), ("restrict(", 2)] {
            if self.eat(kw) {
                let g = self.view()?;
                self.expect(",")?;
                let s = self.set()?;
                self.expect(")")?;
                return Ok(match k {
                    0 => GraphView::switch(g, s),
                    1 => GraphView::flip_within(g, s),
                    _ => GraphView::restrict(g, s),
                });
            }
        }
        if self.eat("flipmatching(") {
            let g = self.view()?;
            self.expect(")")?;
            return Ok(GraphView::flip_matching(g));
        }
        if self.eat("delete(") {
            let g = self.view()?;
            self.expect(",")?;
            let d = if self.peek() == Some(b'{') { self.braced()? } else { self.ints(b')')? };
            self.expect(")")?;
            return Ok(GraphView::delete(g, d));
        }
        self.err("expected a view")
    }

    fn set(&mut self) -> Result<VertexSet> {
        let mut acc = self.atom()?;
        loop {
            let op = match self.peek() {
                Some(c @ (b'+' | b'&' | b'-' | b'^')) => c,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.atom()?;
            acc = match op {
                b'+' => VertexSet::union(acc, rhs),
                b'&' => VertexSet::intersection(acc, rhs),
                b'-' => VertexSet::difference(acc, rhs),
                _ => VertexSet::symdiff(acc, rhs),
            };
        }
    }

    fn atom(&mut self) -> Result<VertexSet> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let s = self.set()?;
                self.expect(")")?;
                Ok(s)
            }
            Some(b'{') => Ok(VertexSet::finite(self.braced()?)),
            _ => {
                if self.eat("NCS(") {
                    let v = self.int()?;
                    self.expect(")")?;
                    Ok(VertexSet::NonNbhdStrict(v))
                } else if self.eat("N(") {
                    let v = self.int()?;
                    self.expect(")")?;
                    Ok(VertexSet::Nbhd(v))
                } else if self.eat("W(") {
                    let u = self.braced()?;
                    self.expect(";")?;
                    let v = self.braced()?;
                    self.expect(")")?;
                    match DisjointPair::new(u, v) {
                        Ok(p) => Ok(VertexSet::Witness(p)),
                        Err(e) => self.err(e.to_string()),
                    }
                } else if self.eat("all") {
                    Ok(VertexSet::All)
                } else if self.eat("stream:") {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || b"_.".contains(&self.src[self.pos]))
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                    if name.is_empty() {
                        return self.err("expected a stream name");
                    }
                    match stream::resolve(name) {
                        Ok(s) => Ok(VertexSet::Stream(s)),
                        Err(e) => self.err(e.to_string()),
                    }
                } else {
                    self.err("expected a set")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "base",
            "switch(base,{0,2})",
            "flipwithin(base,NCS(0))",
            "delete(base,0,3)",
            "restrict(switch(delete(base,0),((N(1)-N(0))-{0})),W({1};{0}))",
            "switch(base,all)",
            "restrict(base,{})",
            "flipmatching(switch(base,{1}))",
        ] {
            let v = parse_view(text).unwrap();
            assert_eq!(v.to_string(), text);
            assert_eq!(parse_view(&v.to_string()).unwrap(), v);
        }
    }

    #[test]
    fn left_assoc_and_spaces() {
        let s = parse_set(" N(1) - N(0) - {0} ").unwrap();
        assert_eq!(s.to_string(), "((N(1)-N(0))-{0})");
        let t = parse_set("N(1) - (N(0) - {0})").unwrap();
        assert_ne!(s, t);
        assert_eq!(parse_view("delete(base,{1,2})").unwrap().to_string(), "delete(base,1,2)");
    }

    #[test]
    fn errors_are_located() {
        assert!(matches!(parse_view("switch(base,"), Err(Error::Parse { .. })));
        assert!(matches!(parse_set("W({1};{1})"), Err(Error::Parse { .. })));
        assert!(matches!(parse_set("stream:nope"), Err(Error::Parse { .. })));
        assert!(matches!(parse_view("base x"), Err(Error::Parse { .. })));
    }
}
