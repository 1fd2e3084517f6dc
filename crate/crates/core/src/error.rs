use std::path::PathBuf;

use crate::Category;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("document `{id}` is not valid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { id: String, offset: usize },

    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed manifest `{path}`: {reason}")]
    Manifest { path: PathBuf, reason: String },

    #[error("no documents")]
    NoDocuments,

    /// One diagnostic per failing document.
    #[error("{} document(s) failed:\n{}", .0.len(), list(.0))]
    Documents(Vec<Error>),

    #[error("duplicate document id `{0}`")]
    DuplicateId(String),

    #[error("document `{id}` has undeclared category {category}")]
    UndeclaredCategory { id: String, category: Category },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed series file `{path}`: {reason}")]
    SeriesFormat { path: PathBuf, reason: String },

    #[error("series shorter than one segment: {category} has {len} words, segment length is {segment_length}")]
    SeriesTooShort {
        category: Category,
        len: usize,
        segment_length: usize,
    },

    #[error("order {order} exceeds segment length {len}")]
    OrderTooLarge { order: usize, len: usize },

    #[error("n-gram order must be at least 1")]
    ZeroOrder,

    #[error("empty group: {0}")]
    EmptyGroup(String),

    #[error("segments belong to more than one category ({0} and {1})")]
    MixedCategories(Category, Category),

    #[error("at least two categories are required, found {0}")]
    TooFewCategories(usize),

    #[error("invalid n-gram table: {0}")]
    Table(String),

    #[error("cannot write output `{path}`: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn list(errors: &[Error]) -> String {
    errors
        .iter()
        .map(|e| format!("  {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Folds a list of per-document failures into one error.
    pub fn from_documents(mut errors: Vec<Error>) -> Self {
        if errors.len() == 1 {
            errors.pop().unwrap()
        } else {
            Error::Documents(errors)
        }
    }

    /// Process exit code: 2 for bad input, 3 for data too small to analyze,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidUtf8 { .. }
            | Error::Io { .. }
            | Error::Manifest { .. }
            | Error::NoDocuments
            | Error::Documents(_)
            | Error::DuplicateId(_)
            | Error::UndeclaredCategory { .. }
            | Error::Config(_)
            | Error::SeriesFormat { .. }
            | Error::ZeroOrder => 2,
            Error::SeriesTooShort { .. }
            | Error::OrderTooLarge { .. }
            | Error::EmptyGroup(_)
            | Error::TooFewCategories(_) => 3,
            Error::MixedCategories(..)
            | Error::Table(_)
            | Error::Output { .. }
            | Error::Csv(_)
            | Error::Json(_) => 1,
        }
    }
}
