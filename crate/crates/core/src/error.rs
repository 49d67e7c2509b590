use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "size limit: {size} elements exceeds the cap of {cap} ({catalan} non-crossing partitions)"
    )]
    SizeLimit {
        size: usize,
        cap: usize,
        catalan: String,
    },

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(String, String),

    #[error("{0} does not refine {1}")]
    NotRefinement(String, String),

    #[error("arity mismatch: expected {expected} letters, got {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("product of two letters in algebra {0} is not representable")]
    UnsupportedProduct(u32),

    #[error("unknown algebra id {0}")]
    UnknownAlgebra(u32),

    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
