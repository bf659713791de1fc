use std::path::PathBuf;

/// Toolkit-wide error type.
///
/// `Config` and `Vocab` errors indicate bad inputs that should stop a run
/// before any work starts (CLI exit code 2); `Io` covers filesystem
/// failures (exit code 3). Per-record problems inside a running pipeline
/// are never surfaced here — they increment drop counters instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("vocabulary error: {0}")]
    Vocab(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn vocab(msg: impl Into<String>) -> Self {
        Error::Vocab(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
