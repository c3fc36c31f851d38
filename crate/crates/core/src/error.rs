use thiserror::Error;

use crate::word::Letter;

/// Errors raised by the sequence, numeration and attractor layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParryError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("letter {letter} is outside the alphabet of size {alphabet_size}")]
    LetterOutOfRange {
        letter: Letter,
        alphabet_size: usize,
    },

    #[error("word of length {requested} exceeds the configured cap of {cap} letters")]
    CapExceeded { requested: u64, cap: usize },

    #[error("level {level} is below the minimum level {min} for this construction")]
    LevelTooSmall { level: usize, min: usize },

    #[error("operation `{0}` needs simple Parry parameters")]
    NotSimple(&'static str),

    #[error("operation `{0}` needs binary non-simple Parry parameters")]
    NotNonSimpleBinary(&'static str),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error(
        "digits {digits} are not Parry-admissible: suffix {suffix} is not below d*(1) = {d_star}"
    )]
    Inadmissible {
        digits: String,
        suffix: String,
        d_star: String,
    },

    #[error("invalid digit string: {0}")]
    InvalidDigits(String),

    #[error(
        "scan for the longest power prefix of u_{level} ran past u_{limit} without a mismatch"
    )]
    ScanLimit { level: usize, limit: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Errors raised by the attractor verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("position {position} is outside a word of length {length}")]
    PositionOutOfRange { position: usize, length: usize },

    #[error("word of length {length} exceeds the exhaustive search cap {cap}")]
    CapExceeded { length: usize, cap: usize },

    #[error("empty period word")]
    EmptyPeriod,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = ParryError> = std::result::Result<T, E>;
