use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("outgoing differential composed with incoming differential is nonzero")]
    CompositionNonzero,

    #[error("chain map is not compatible with the subquotients: {0}")]
    NotCompatible(String),

    #[error("map does not send relations into relations: {0}")]
    IllDefined(String),

    #[error("no integral solution: {0}")]
    NotSolvable(String),

    #[error("invalid group context: {0}")]
    Context(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown coefficient functor `{0}`")]
    UnknownCoefficient(String),

    #[error("odd integer required, got {0}")]
    Parity(u64),

    #[error("representation must be normalized first: {0}")]
    NormalizationRequired(String),

    #[error("representation has no lambda summand")]
    NoLambdaSummand,

    #[error("virtual representation not supported: {0}")]
    UnsupportedVirtual(String),

    #[error("complex construction failed: {0}")]
    Construction(String),

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed json: {0}")]
    Json(String),
}
