use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the embed/extract pipeline.
///
/// Key material is never included in a message.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid key: {0}")]
    InvalidKey(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("logistic orbit left (0,1) after {iterations} iterations")]
    DegenerateOrbit { iterations: u64 },

    #[error("length mismatch: {left} bits vs {right} bits")]
    LengthMismatch { left: usize, right: usize },

    #[error("capacity exceeded: {required} required, {available} available")]
    CapacityExceeded { required: u64, available: u64 },

    #[error("malformed header: wrong key, wrong k, or not a stego image")]
    MalformedHeader,

    #[error("unsupported image format{}", .0.as_ref().map(|f| format!(" ({f})")).unwrap_or_default())]
    UnsupportedFormat(Option<String>),

    #[error("unsupported sample depth: {0} (only 8-bit samples are accepted)")]
    UnsupportedDepth(String),

    #[error("failed to decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("image shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (u32, u32, u8),
        right: (u32, u32, u8),
    },

    #[error("too few bits for the test: {got} < {min}")]
    TooFewBits { got: usize, min: usize },

    #[error("test prerequisite failed: {0}")]
    PrerequisiteFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
