use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input at line {line}: {message}")]
    MalformedInput { line: usize, message: String },

    #[error("document has no sections")]
    EmptyDocument,

    #[error("duplicate reference id '{0}'")]
    DuplicateRefId(String),

    #[error("unparseable author name '{0}'")]
    UnparseableName(String),

    #[error("malformed lexicon at line {line}: {message}")]
    MalformedLexicon { line: usize, message: String },

    #[error("malformed venue mapping at line {line}: {message}")]
    MalformedMapping { line: usize, message: String },

    #[error("unknown reference '{0}'")]
    UnknownRef(String),

    #[error("invalid mention count {0}; must be at least 1")]
    InvalidCount(i64),

    #[error("incomplete coding: category {0} has neither a value nor a reason")]
    IncompleteCoding(char),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty code lists")]
    EmptyInput,

    #[error("unknown category '{0}'")]
    UnknownCategory(String),

    #[error("no gold items align with the coded records")]
    NoOverlap,

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        Error::MalformedInput {
            line,
            message: message.into(),
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
