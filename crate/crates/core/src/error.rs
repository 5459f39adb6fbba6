use thiserror::Error;

use crate::arrangement::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid mesh `{label}`: {}", violations.join("; "))]
    Validation { label: String, violations: Vec<String> },

    #[error("scene is not generic: {}", witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("; "))]
    NonGeneric { witnesses: Vec<Witness> },

    #[error("point {0} lies on the surface")]
    OnSurface(String),

    #[error("degenerate sampling: {0}")]
    DegenerateSampling(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("{what} index {index} out of range (have {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown catalogue name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
