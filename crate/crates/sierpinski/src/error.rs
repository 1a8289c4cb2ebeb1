use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop on vertex {0:?} rejected: graphs are simple")]
    Loop(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("malformed graph6 data: {0}")]
    MalformedGraph6(String),
    #[error("{what} exceeds configured limit of {limit}")]
    Overflow { what: String, limit: usize },
    #[error("edge {0:?} -- {1:?} is not present in the graph")]
    UnknownEdge(String, String),
    #[error("vertex map is not total: no image for {0:?}")]
    MapNotTotal(String),
    #[error("vertex map is not a bijection")]
    MapNotBijective,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("permutation is not an automorphism of the graph")]
    NotAnAutomorphism,
    #[error("group is not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("graph must be connected for this operation")]
    Disconnected,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
