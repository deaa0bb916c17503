//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("group is not transitive on its point set")]
    Intransitive,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Parameter sets that are arithmetically impossible for a design,
    /// as opposed to malformed input.
    #[error("infeasible design parameters v={v} k={k} lambda={lambda}: {reason}")]
    InfeasibleParameters {
        v: u64,
        k: u64,
        lambda: u64,
        reason: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("designs have mixed parameters: {0}")]
    MixedParameters(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
