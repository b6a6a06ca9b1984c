use thiserror::Error;

/// Errors reported by the eigenvalue kernels.
///
/// Every variant corresponds to a *caller-visible* failure mode; numerical
/// internals (pivot perturbations, restart counts) are handled silently as
/// long as the advertised accuracy contracts hold.
#[derive(Debug, Error)]
pub enum EigError {
    /// An input matrix or vector contained NaN/∞, had inconsistent
    /// dimensions, or violated a structural invariant of its type.
    #[error("rejected input: {0}")]
    RejectedInput(String),

    /// An eigenvalue/eigenvector index or count was out of range.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// The deflation shift sits on a non-deflated eigenvalue: the deflated
    /// resolvent does not exist there.
    #[error("ill-posed deflated solve: {0}")]
    IllPosed(String),

    /// An iterative kernel stopped before reaching its tolerance. The
    /// message carries the best residual achieved.
    #[error("iteration did not converge: {0}")]
    NonConverged(String),
}

impl EigError {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        EigError::RejectedInput(msg.into())
    }
}
