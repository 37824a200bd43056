use thiserror::Error;

/// Errors raised while building, querying or (de)serializing an index.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range (valid: {lo}..={hi})")]
    OutOfRange { index: usize, lo: usize, hi: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("input format error: {0}")]
    Format(String),

    #[error("corrupt index: {0}")]
    Corrupt(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(index: usize, lo: usize, hi: usize) -> Error {
    Error::OutOfRange { index, lo, hi }
}
