use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("{0} is not an edge of the graph")]
    NotAnEdge(String),

    #[error("vertex set is not a subset of the graph's vertices")]
    NotSubset,

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("enumeration of {what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("graph is not chordal")]
    NotChordal,

    #[error("ordering is not a perfect elimination ordering: {0}")]
    InvalidOrdering(String),

    #[error("node set is not stable in the auxiliary graph")]
    NotStable,

    #[error("vertex set is not a co-3-plex: {0}")]
    NotCo3Plex(String),

    #[error("invalid master model: {0}")]
    Model(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("final basic solution is fractional: column {column} has value {value}")]
    NonIntegral { column: String, value: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
