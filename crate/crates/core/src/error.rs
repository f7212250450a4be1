use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{kind} not found: {id}")]
    NotFound { kind: &'static str, id: String },

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("graph contains a cycle through {0}")]
    Cycle(String),

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("row {row}, column `{column}`: {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("row {row}: {message}")]
    Validation { row: usize, message: String },

    #[error("row {row}: duplicate player_id `{id}`")]
    Duplicate { row: usize, id: String },

    /// Request-level failure with a stable machine-readable code.
    #[error("{code}: {message}")]
    Request { code: &'static str, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub(crate) fn request(code: &'static str, message: impl Into<String>) -> Error {
    Error::Request {
        code,
        message: message.into(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
