//! Error type shared across the crate.

use std::fmt;
use std::io;
use std::path::PathBuf;

/// Convenience alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by bit-string construction, operator configuration, the
/// experiment harness, and the statistics routines.
#[derive(Debug)]
pub enum Error {
    /// A bit string of length zero was requested.
    ZeroLength,
    /// Two bit strings that must have equal length do not.
    LengthMismatch { left: usize, right: usize },
    /// A bit position outside `0..len` was addressed.
    IndexOutOfRange { index: usize, len: usize },
    /// A pattern literal contained a character other than `0` or `1`.
    InvalidBitChar { ch: char },
    /// A per-bit flip probability was outside `[0, 1]` or not finite.
    InvalidProbability { value: f64 },
    /// The adaptation rate must lie strictly between 0 and 1/4.
    InvalidAlpha { value: f64 },
    /// The phase length must be an even integer of at least 2.
    InvalidPhaseLength { value: u64 },
    /// A phase-boundary update was requested between phase boundaries.
    NotPhaseBoundary { t: u64, phase_length: u64 },
    /// A statistic was requested on an empty sample.
    EmptySample,
    /// A sample contained NaN or an infinity.
    NonFiniteSample,
    /// A run or experiment configuration field failed validation.
    InvalidConfig { field: String, message: String },
    /// A failure reading or writing a specific file.
    File { path: PathBuf, message: String },
    /// An I/O failure while reading configs or writing results.
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroLength => write!(f, "bit string length must be at least 1"),
            Error::LengthMismatch { left, right } => {
                write!(f, "bit string lengths differ: {left} vs {right}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "bit index {index} out of range for length {len}")
            }
            Error::InvalidBitChar { ch } => {
                write!(f, "invalid character {ch:?} in bit pattern, expected '0' or '1'")
            }
            Error::InvalidProbability { value } => {
                write!(f, "flip probability {value} is not in [0, 1]")
            }
            Error::InvalidAlpha { value } => {
                write!(f, "adaptation rate {value} is not in the open interval (0, 0.25)")
            }
            Error::InvalidPhaseLength { value } => {
                write!(f, "phase length {value} must be an even integer >= 2")
            }
            Error::NotPhaseBoundary { t, phase_length } => {
                write!(
                    f,
                    "strength update requested at t = {t}, which is not a multiple of the phase length {phase_length}"
                )
            }
            Error::EmptySample => write!(f, "statistic requires a non-empty sample"),
            Error::NonFiniteSample => {
                write!(f, "samples must be finite, found NaN or an infinity")
            }
            Error::InvalidConfig { field, message } => {
                write!(f, "invalid configuration field `{field}`: {message}")
            }
            Error::File { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
            Error::Io(err) => write!(f, "I/O error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(err: io::Error) -> Self {
        Error::Io(err)
    }
}
