use thiserror::Error;

/// Errors produced by the solvers, reductions and instance I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("size guard: {what} is {actual}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        actual: u128,
        limit: u128,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generation error: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
