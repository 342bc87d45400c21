use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("could not place {placed} of {requested} particles without overlap after {attempts} attempts")]
    Initialization {
        requested: usize,
        placed: usize,
        attempts: usize,
    },

    #[error("invalid configuration: `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("empty trace")]
    EmptyTrace,

    #[error("empty window {start}..{end} for a trace of length {len}")]
    EmptyWindow { start: usize, end: usize, len: usize },

    #[error("series of length {len} is too short for max lag {max_lag}")]
    SeriesTooShort { len: usize, max_lag: usize },

    #[error("series has zero variance; autocorrelation is undefined")]
    DegenerateSeries,

    #[error("cannot summarize an empty set of values")]
    EmptySummary,

    #[error("reference data line {line}: {message}")]
    ReferenceFormat { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: malformed record on row {row}: {message}")]
    Record {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Toml {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
