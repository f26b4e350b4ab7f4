use thiserror::Error;

use crate::rado::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),
    #[error("vertex {0} is outside the universe of the view")]
    OutOfUniverse(Vertex),
    #[error("odd_parity needs 3, 4 or 5 vertices, got {0}")]
    BadArity(usize),
    #[error("no witness within bound while extending at {0}")]
    NoWitnessWithinBound(Vertex),
    #[error("seed is not a partial isomorphism: {0}")]
    SeedInconsistent(String),
    #[error("edge family is empty")]
    EmptyEdgeFamily,
    #[error("overlapping U and V at vertex {0}")]
    NotDisjoint(Vertex),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("window {window} is not materialized (table covers [0,{covered}))")]
    NotMaterialized { window: Vertex, covered: Vertex },
    #[error("unknown stream {0}")]
    UnknownStream(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
