//! File formats, JSON reports, parallel sweeps and the command line for
//! the constructions in `og4-core`.

pub mod cli;
pub mod formats;
pub mod input;
pub mod json;
pub mod sweep;

use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] og4_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("unknown export format {0:?}")]
    UnknownFormat(String),
    #[error("oriented export needs an orientation")]
    MissingOrientation,
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
