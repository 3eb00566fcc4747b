use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {value} outside [0, 1] in {context}")]
    DegreeOutOfRange { value: f64, context: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    #[error("attribute subset is empty; the relation is undefined")]
    EmptyAttributeSet,

    #[error("attribute index {index} out of range for {count} attributes")]
    AttributeIndex { index: usize, count: usize },

    #[error("degenerate decision system: positive region over all attributes has zero sigma-count")]
    DegenerateSystem,

    #[error("dataset has no objects")]
    EmptyDataset,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("label column `{name}` not found; available columns: {available:?}")]
    MissingLabelColumn { name: String, available: Vec<String> },

    #[error("attribute mismatch between files: {0}")]
    AttributeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("set cover instance is infeasible: element {element} is covered by no set")]
    Infeasible { element: usize },

    #[error("ruleset is empty")]
    EmptyRuleset,

    #[error("io error: {0}")]
    Io(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
