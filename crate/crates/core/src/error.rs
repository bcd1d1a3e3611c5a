use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: cannot parse year literal {value:?}")]
    Datatype { line: usize, value: String },

    #[error("unknown predicates at lines {lines:?}: {predicates:?}")]
    UnknownPredicates {
        predicates: Vec<String>,
        lines: Vec<usize>,
    },

    #[error("vector for {entity} has {found} values, expected {expected}")]
    Dimension {
        entity: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("non-finite gradient in {group} at optimizer step {step}")]
    NonFiniteGradient { group: &'static str, step: u64 },

    #[error("bad checkpoint: {0}")]
    Checkpoint(String),

    #[error("missing {path}: run `land {producer}` first")]
    MissingArtifact { path: PathBuf, producer: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
