use thiserror::Error;

use crate::exactlin::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mutually inconsistent input data.
    #[error("input error: {0}")]
    Input(String),
    /// An operation was called on data that does not satisfy its
    /// mathematical precondition (e.g. a non Rota-Baxter operator).
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
