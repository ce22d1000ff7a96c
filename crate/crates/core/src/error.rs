use thiserror::Error;

use crate::local_ring::Code;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("ring of order 1 has no non-zero identity")]
    TrivialRing,

    #[error("ring order {0} exceeds the supported maximum")]
    TooLarge(u64),

    #[error("code {code} out of range for a ring of size {size}")]
    CodeOutOfRange { code: Code, size: u32 },

    #[error("{0} is not a unit")]
    NotUnit(Code),

    #[error("a product ring needs at least one factor")]
    EmptyProduct,

    #[error("element has {got} coordinates but the ring has {expected} factors")]
    Arity { expected: usize, got: usize },

    #[error("element lies in the Jacobson radical")]
    InRadical,

    #[error("operation requires a local ring")]
    NotLocal,

    #[error("operation requires a non-local ring")]
    Local,

    #[error("distinguished index {index} out of range 1..={n}")]
    BadIndex { index: usize, n: usize },

    #[error("vertices must be distinct")]
    SameVertex,

    #[error("graph has {vertices} vertices, above the limit of {limit}")]
    VertexLimit { vertices: u64, limit: u64 },

    #[error("unknown export format `{0}`")]
    UnknownFormat(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("i/o error: {0}")]
    Io(String),
}

/// Ring-spec syntax or semantic error, anchored at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}
