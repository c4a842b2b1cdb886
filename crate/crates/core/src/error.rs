//! Shared error type for the core library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// A configuration value is invalid or two configured values are inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// Raster or tensor shapes do not line up.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Two weight sets cannot be combined because their architectures differ.
    #[error("combinability error: fingerprint mismatch ({left:016x} vs {right:016x}): {context}")]
    Combinability {
        left: u64,
        right: u64,
        context: String,
    },

    /// Input data violates a precondition (e.g. non-binary mask values).
    #[error("validation error: {0}")]
    Validation(String),

    /// An argument is outside its allowed domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A binary file is malformed; `offset` is the byte position of the problem.
    #[error("format error at byte {offset}: {reason}")]
    Format { offset: u64, reason: String },

    /// Scene synthesis could not place all requested objects.
    #[error("placement error: requested {requested} objects, placed {placed} after {attempts} attempts")]
    Placement {
        requested: usize,
        placed: usize,
        attempts: usize,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("manifest error in {path}: {reason}")]
    Manifest { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CoreError::Io {
            path: path.into(),
            source,
        }
    }
}
