use thiserror::Error;

/// Error type shared by the whole crate.
///
/// `Domain` covers invalid inputs and configuration, `Numeric` covers
/// failed computations (non-convergence, inconsistent closed-form inputs),
/// `Resource` covers problem sizes beyond desk scale.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code for the CLI: 1 for bad input, 2 for runtime failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 1,
            Error::Numeric(_) | Error::Resource(_) | Error::Io(_) => 2,
        }
    }
}
