use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not planar")]
    NonPlanar,

    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),

    #[error("graph is not 3-connected")]
    NotThreeConnected,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate constraint: {0}")]
    Degenerate(String),

    #[error("{k} degree-2 vertices exceed the search cap of {cap}")]
    CapExceeded { k: usize, cap: usize },

    #[error("unsupported representative-point model: {0}")]
    UnsupportedModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
