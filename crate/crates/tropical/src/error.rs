use crate::parse::ParseError;
use crate::scalar::Rat;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Parse(ParseError),
    #[error("{} parse error(s); first: {}", .0.len(), .0[0])]
    ParseMany(Vec<ParseError>),
    #[error("schema violation at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("not a set-curve: {0}")]
    NotBalanceable(String),
    #[error("curve is not additive")]
    NotAdditive {
        witness: Option<(Vec<Rat>, Vec<Rat>)>,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
