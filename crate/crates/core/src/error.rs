use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a poset on {n_vertices} vertices")]
    Range { vertex: usize, n_vertices: usize },

    #[error("edges contain a directed cycle through vertex {vertex}")]
    Cycle { vertex: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("brute-force enumeration over {n_vertices} vertices exceeds the cap of {cap}")]
    LimitExceeded { n_vertices: usize, cap: usize },

    #[error("chain lengths must be positive, got ({m}, {n})")]
    EmptyChain { m: usize, n: usize },

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("partition is not open")]
    NotOpen,

    #[error("open partition does not decompose along the two chains: {0}")]
    NotDecodable(String),

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequences have different lengths ({left} and {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("sequence is not symmetric at position {index}")]
    AsymmetricSequence { index: usize },

    #[error("sequence entry at position {index} is not positive")]
    NonPositiveEntry { index: usize },

    #[error("palette must contain at least one color")]
    EmptyPalette,
}
