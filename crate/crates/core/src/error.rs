use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line count mismatch: {left_name} has {left} lines, {right_name} has {right}")]
    LineCountMismatch {
        left_name: String,
        left: usize,
        right_name: String,
        right: usize,
    },

    #[error("{path}: invalid UTF-8 at byte {offset}")]
    Encoding { path: PathBuf, offset: usize },

    #[error("line {line}: malformed alignment link {item:?} (expected \"i-j\")")]
    MalformedLink { line: usize, item: String },

    #[error("line {line}: link {source_idx}-{target_idx} out of range for sentence lengths {source_len}/{target_len}")]
    OutOfRangeLink {
        line: usize,
        source_idx: usize,
        target_idx: usize,
        source_len: usize,
        target_len: usize,
    },

    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("embedding header mismatch: {0}")]
    HeaderMismatch(String),

    #[error("line {line}: malformed vector: {reason}")]
    MalformedVector { line: usize, reason: String },

    #[error("invalid token {0:?}: tokens must be non-empty and contain no whitespace")]
    InvalidToken(String),

    #[error("corpus tags differ: {left} vs {right}")]
    TagMismatch { left: String, right: String },

    #[error("cannot sample {k} distinct indices from {n}")]
    KTooLarge { n: usize, k: usize },

    #[error("dictionary is empty")]
    EmptyDictionary,

    #[error("thesaurus is empty")]
    EmptyThesaurus,

    #[error("embedding table is empty")]
    EmptyEmbeddings,

    #[error("hypothesis/reference count mismatch: {hypotheses} vs {references}")]
    LengthMismatch { hypotheses: usize, references: usize },

    #[error("no sentences to score")]
    EmptyInput,

    #[error("reference sentence is empty")]
    EmptyReference,

    #[error("value {0} outside [0, 1]")]
    OutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LineCountMismatch { .. } => "LineCountMismatch",
            Error::Encoding { .. } => "Encoding",
            Error::MalformedLink { .. } => "MalformedLink",
            Error::OutOfRangeLink { .. } => "OutOfRangeLink",
            Error::MalformedRow { .. } => "MalformedRow",
            Error::HeaderMismatch(_) => "HeaderMismatch",
            Error::MalformedVector { .. } => "MalformedVector",
            Error::InvalidToken(_) => "InvalidToken",
            Error::TagMismatch { .. } => "TagMismatch",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::EmptyDictionary => "EmptyDictionary",
            Error::EmptyThesaurus => "EmptyThesaurus",
            Error::EmptyEmbeddings => "EmptyEmbeddings",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::EmptyInput => "EmptyInput",
            Error::EmptyReference => "EmptyReference",
            Error::OutOfRange(_) => "OutOfRange",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
        }
    }
}
