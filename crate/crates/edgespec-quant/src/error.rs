use thiserror::Error;

/// Errors from quantizing the reduced symbol and analysing its spectrum.
#[derive(Debug, Error)]
pub enum QuantError {
    /// Rejected input or a violated precondition, with the reason.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A returned eigenvector leaves more than the allowed coefficient
    /// mass on the outermost Fourier modes: the window is too small for
    /// the state and the spectrum cannot be trusted.
    #[error("mode window too small: edge coefficient mass {mass:.3e} exceeds {limit:.3e}; increase the mode count")]
    ModeTruncation { mass: f64, limit: f64 },

    #[error(transparent)]
    Band(#[from] band1d::Band1dError),

    #[error(transparent)]
    Eig(#[from] eigcore::EigError),

    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),

    #[error(transparent)]
    Symbol(#[from] effsymbol::EffSymbolError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> QuantError {
    QuantError::Invalid(msg.into())
}
