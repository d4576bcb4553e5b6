use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("model `{0}` requires a path length but none was supplied")]
    MissingPathLength(String),

    #[error("model id `{0}` is already registered")]
    DuplicateId(String),

    #[error("unknown model id `{0}`")]
    UnknownModel(String),

    #[error("sweep requires {0}")]
    MissingModelKind(&'static str),

    #[error("grid contains no points")]
    EmptyGrid,

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("graph too dense: {m} arcs requested but a simple digraph on {n} vertices holds at most {max}")]
    TooDense { n: u64, m: u64, max: u64 },

    #[error("invalid weight range [{lo}, {hi}]")]
    InvalidWeightRange { lo: f64, hi: f64 },

    #[error("source vertex {vertex} out of range for graph with {n} vertices")]
    InvalidSource { vertex: u32, n: u32 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
