use thiserror::Error;

/// Errors produced by the rank deciders and their inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid interval [{lo}, {hi}]: lower endpoint exceeds upper endpoint")]
    InvalidInterval { lo: String, hi: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} limit exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("out of method scope: {0}")]
    OutOfScope(String),

    #[error("point matrix entry ({row}, {col}) lies outside its interval")]
    NotMember { row: usize, col: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
