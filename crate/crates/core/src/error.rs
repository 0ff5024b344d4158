//! Error type shared by every module of the crate.

use std::path::PathBuf;

/// Errors raised by simulation, estimation and experiment code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A register size or dimension is out of range, or two states disagree in size.
    #[error("size error: {0}")]
    Size(String),

    /// A qubit or vertex index is out of range, or a two-qubit gate names one qubit twice.
    #[error("index error: {0}")]
    Index(String),

    /// An argument combination is invalid (shape mismatch, bad sweep range, unknown preset).
    #[error("configuration error: {0}")]
    Config(String),

    /// A computed quantity left its admissible range by more than float noise.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// An input file could not be parsed.
    #[error("parse error in {origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Deserializes JSON, reporting the failing field path with its line and column.
pub(crate) fn parse_json<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let full = inner.to_string();
        let reason = full
            .strip_suffix(&format!(" at line {line} column {column}"))
            .unwrap_or(&full);
        Error::Parse {
            origin: origin.to_string(),
            message: format!("field `{path}` at line {line}, column {column}: {reason}"),
        }
    })
}
