use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("level {0} graph is not connected")]
    DisconnectedLevel(u32),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("weight map missing directed edge {0}")]
    MissingWeight(usize),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("series indistinguishable from 0 at this precision")]
    ZeroSeries,

    #[error("characteristic series is identically zero")]
    ZeroDeterminant,

    #[error("connectedness criterion indeterminate at current precision")]
    IndeterminateCriterion,

    #[error("enumeration cap exceeded: {0} undirected edges (cap {1})")]
    OracleCap(usize, usize),

    #[error("cover levels do not match: {0}")]
    LevelMismatch(String),

    #[error("divisor support does not match graph: expected {expected} vertices, got {got}")]
    SupportMismatch { expected: usize, got: usize },

    #[error("value out of range: {0}")]
    Overflow(String),

    #[error("bad argument: {0}")]
    BadArgument(String),

    #[error("input document: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
