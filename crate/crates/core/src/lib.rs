//! The Rado graph as a computable structure.
//!
//! Vertices are natural numbers (`u128`); `i < j` are adjacent when bit `i`
//! of `j` is set. On top of that sit derived graphs (switchings, flips,
//! deletions, restrictions), an exact witness engine, back-and-forth
//! construction of isomorphisms, and evidence for membership of concrete
//! permutations in the overgroups of the automorphism group.

pub mod error;
pub mod rado;
pub mod verdict;
pub mod stream;
pub mod sets;
pub mod views;
pub mod syntax;
pub mod witness;
pub mod table;
pub mod iso;
pub mod classify;
pub mod constructions;
pub mod reports;

pub use error::{Error, Result};
pub use rado::{adjacent, DisjointPair, Vertex};
pub use sets::VertexSet;
pub use verdict::{Certificate, Rule, Verdict, VerdictKind};
pub use views::GraphView;
