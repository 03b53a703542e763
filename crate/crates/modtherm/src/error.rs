use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("no convergence in {what}: {detail}")]
    Convergence { what: &'static str, detail: String },
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Convergence {
            what,
            detail: detail.into(),
        }
    }
}
