use thiserror::Error;

#[derive(Debug, Error)]
pub enum EffSymbolError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("transverse band computation failed: {0}")]
    Band(#[from] band1d::Band1dError),
    #[error("linear-algebra kernel failed: {0}")]
    Eig(#[from] eigcore::EigError),
    #[error("moment computation failed: {0}")]
    Moments(#[from] moments_degennes::MomentsError),
    #[error("geometry input rejected: {0}")]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl EffSymbolError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        EffSymbolError::Invalid(msg.into())
    }
}
