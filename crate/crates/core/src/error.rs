use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure category, used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or unusable input data.
    Validation,
    /// Inputs are well-formed but a pipeline stage cannot run on them.
    Precondition,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::Io => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sequence input")]
    EmptyInput,

    #[error("invalid symbol {symbol:?} at position {position}")]
    InvalidSymbol { position: usize, symbol: char },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "insufficient bases: {count} windows of {size} {direction} from {anchor} need \
         coordinates {first}..={last}, genome has {length}"
    )]
    InsufficientBases {
        anchor: usize,
        count: usize,
        size: usize,
        direction: crate::genome_io::Direction,
        first: i64,
        last: i64,
        length: usize,
    },

    #[error("corpus contains no countable letters")]
    NoCountableLetters,

    #[error(
        "cardinality mismatch: {classes} composition classes vs {letters} letters; \
         adjust the omission set so both sides have the same size"
    )]
    CardinalityMismatch { classes: usize, letters: usize },

    #[error("cannot build a mapping from an empty {0} table")]
    EmptyTable(&'static str),

    #[error("class {class} at stream position {position} has no mapped letter")]
    UnmappedClass { class: String, position: usize },

    #[error("letter {letter:?} at position {position} has no mapped class")]
    UnmappedLetter { letter: char, position: usize },

    #[error("duplicate key {0} in substitution table")]
    DuplicateKey(String),

    #[error("dictionary is empty after filtering words shorter than {min_len}")]
    EmptyDictionary { min_len: usize },

    #[error("trials must be at least 1")]
    ZeroTrials,

    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyInput
            | Error::InvalidSymbol { .. }
            | Error::InvalidParameter(_)
            | Error::NoCountableLetters
            | Error::DuplicateKey(_)
            | Error::EmptyDictionary { .. }
            | Error::Malformed { .. }
            | Error::UnknownFixture(_) => ErrorKind::Validation,
            Error::InsufficientBases { .. }
            | Error::CardinalityMismatch { .. }
            | Error::EmptyTable(_)
            | Error::UnmappedClass { .. }
            | Error::UnmappedLetter { .. }
            | Error::ZeroTrials => ErrorKind::Precondition,
            Error::Io { .. } | Error::Stream(_) => ErrorKind::Io,
        }
    }
}
