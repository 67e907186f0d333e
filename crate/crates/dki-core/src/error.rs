//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by parameter validation and the simulation pipeline.
///
/// Variants map one-to-one onto the distinct CLI exit codes, so keep them
/// coarse: the message carries the specifics.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric or structural argument violates its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A requested construction would exceed the configured memory cap.
    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),

    /// A message index does not address a codeword of the codebook at hand.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A fading model description is unusable (e.g. infimum γ ≤ 0 for a
    /// non-degenerate model).
    #[error("invalid fading model: {0}")]
    InvalidModel(String),

    /// Reading or writing a codebook file failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A codebook file is syntactically or structurally malformed.
    #[error("malformed codebook file: {0}")]
    MalformedFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
