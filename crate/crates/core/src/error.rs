//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadarError {
    /// An input fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are numerically valid but violate a modeling assumption
    /// (e.g. the linearized beat envelope requires a weak echo).
    #[error("model validity: {0}")]
    ModelValidity(String),

    /// The sampled record carries no signal at all.
    #[error("no signal: record is identically zero")]
    NoSignal,

    /// Configuration parse or validation failure.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RadarError>;

impl RadarError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        RadarError::Domain(msg.into())
    }
}
