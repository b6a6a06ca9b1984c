use eigcore::EigError;
use thiserror::Error;

/// Errors from band computations.
#[derive(Debug, Error)]
pub enum Band1dError {
    /// Parameter outside the validated regime.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    /// Eigenfunction mass reaches the truncated boundary; the caller must
    /// enlarge the domain (or use the auto-enlarging entry point).
    #[error("domain [−{t_half}, {t_half}] too small: boundary amplitude {amplitude:.3e}")]
    EnlargeDomain { t_half: f64, amplitude: f64 },
    /// The scanned window contains no interior band minimum.
    #[error("no interior band minimum: {0}")]
    NoMinimum(String),
    /// Propagated linear-algebra failure.
    #[error(transparent)]
    Eig(#[from] EigError),
}

impl Band1dError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Band1dError::InvalidParams(msg.into())
    }
}
