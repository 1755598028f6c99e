//! Error type shared across the crate, with a stable mapping to CLI exit codes.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum SdftError {
    /// Input data is malformed: non-finite samples, a complex value where a
    /// real one is required, an unparsable file, or an index outside its
    /// documented range.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A serialized artifact (binary array, key file, payload, CSV) does not
    /// match the documented layout.
    #[error("format error: {0}")]
    Format(String),

    /// Underlying I/O failure while reading or writing an artifact.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Lengths that must agree do not (signal vs. key, payload vs. key, ...).
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// A 2D key built for one pairing mode was used where the other is required.
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    /// A scrambling key whose angles make the descrambling division unstable.
    #[error("degenerate key: {0}")]
    DegenerateKey(String),

    /// A transform size outside the supported domain (odd, or below the minimum).
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// A verification run (eigenbasis residual, census consistency) failed.
    #[error("verification failure: {0}")]
    Verification(String),
}

impl SdftError {
    /// Stable process exit code for scripting: 0 is success, 2 malformed
    /// input, 3 size/mode mismatch or degenerate key, 4 unsupported size,
    /// 5 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            SdftError::InvalidInput(_) | SdftError::Format(_) | SdftError::Io(_) => 2,
            SdftError::SizeMismatch(_)
            | SdftError::ModeMismatch(_)
            | SdftError::DegenerateKey(_) => 3,
            SdftError::UnsupportedSize(_) => 4,
            SdftError::Verification(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, SdftError>;
