use thiserror::Error;

/// Errors shared across group construction, ψ computation, corpus parsing
/// and file ingestion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {needed} exceeds the table cap {cap}")]
    CapExceeded { needed: u64, cap: u64 },

    #[error("multiplication table is not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("subgroup is not normal: conjugation by element {witness} leaves it")]
    NotNormal { witness: usize },

    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u64 },

    #[error("{n} exceeds the factorization budget ({max})")]
    TooLarge { n: u64, max: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("m = {0} is not coprime to 30")]
    GcdViolation(u64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("wrong parameter count for `{keyword}`: expected {expected}, got {got}")]
    Arity {
        keyword: String,
        expected: String,
        got: usize,
    },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("bad group file: {0}")]
    Format(String),

    #[error("table validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
