use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid geometry parameters: {0}")]
    InvalidParams(String),
    /// The curve failed a hypothesis check (self-intersection, wrong
    /// turning number, non-positive radius, …).
    #[error("rejected curve: {0}")]
    RejectedCurve(String),
    /// The curvature maximum is not unique/non-degenerate in the required
    /// sense.
    #[error("curvature maximum not usable: {0}")]
    NonUniqueMax(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl GeometryError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GeometryError::InvalidParams(msg.into())
    }
}
