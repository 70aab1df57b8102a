use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {q} exceeds the supported limit {limit}")]
    OrderTooLarge { q: u64, limit: u64 },

    #[error("division by zero in F_{q}")]
    DivisionByZero { q: u32 },

    #[error("k = {k} is out of range for n = {n}")]
    OutOfRange { n: u64, k: u64 },

    #[error("ambient mismatch: expected F_{expected_q}^{expected_n}, got F_{found_q}^{found_n}")]
    AmbientMismatch {
        expected_q: u32,
        expected_n: usize,
        found_q: u32,
        found_n: usize,
    },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("construction {construction} requires {requirement}, got n = {n}")]
    ParityMismatch {
        construction: &'static str,
        requirement: &'static str,
        n: usize,
    },

    #[error("candidate set has {candidates} vertices, above the limit of {limit}")]
    TooLarge { candidates: usize, limit: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("block {block} is not a reduced-row-echelon basis")]
    NotCanonical { block: usize },

    #[error("blocks {first} and {second} are the same subspace")]
    DuplicateMember { first: usize, second: usize },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
