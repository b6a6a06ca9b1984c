use band1d::Band1dError;
use eigcore::EigError;

/// Errors from moment quadratures, the half-line model, and the constant
/// routes.
#[derive(Debug, thiserror::Error)]
pub enum MomentsError {
    #[error("rejected input: {0}")]
    InvalidParams(String),
    #[error("band computation failed: {0}")]
    Band(#[from] Band1dError),
    #[error("eigen computation failed: {0}")]
    Eig(#[from] EigError),
    #[error("half-line minimization failed: {0}")]
    NoMinimum(String),
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
}

impl MomentsError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        MomentsError::InvalidParams(msg.into())
    }
}
