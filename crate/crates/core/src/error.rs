use thiserror::Error;

use crate::exactla::LaError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    La(#[from] LaError),
    #[error("presentation is not admissible: path {0} is not in the ideal")]
    Admissibility(String),
    #[error("relation {index} is not composable: {detail}")]
    Composition { index: usize, detail: String },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("schema error at {path}: {detail}")]
    Schema { path: String, detail: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
