use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dense limit exceeded: {0}")]
    DenseLimit(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed {format} data: {reason}")]
    Format { format: &'static str, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(format: &'static str, reason: impl Into<String>) -> Self {
        Error::Format {
            format,
            reason: reason.into(),
        }
    }
}
