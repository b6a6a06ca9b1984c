//! Quantization of reduced edge operators on closed curves.
//!
//! The band reduction turns the two-dimensional magnetic problem into a
//! one-dimensional pseudodifferential operator along the boundary, built
//! from three curvature-weighted coefficient profiles. This crate makes
//! that operator concrete and computable:
//!
//! * [`quantize_reduced`] assembles the Fourier-space matrix of
//!   `(μ''/2)(ħD_s + θ − σ_a − ħc₁(s))² − ħ·lin(s) + ħ²·quad(s)` exactly
//!   on a mode window centered at the momentum minimum, switching to a
//!   real-symmetric representation whenever the curve's mirror symmetry
//!   allows it;
//! * [`a_minus1_operator`] assembles the symmetric-well analogue
//!   `(μ''/2)(D_s + α_ħ)² + c₀·k(s)²` whose eigenvalues are the
//!   second-order spectral coefficients of the full problem at field
//!   ratio −1;
//! * [`spectrum_lowest`] computes dense, round-off-accurate low spectra
//!   (resolving tunneling doublets far below iterative-solver resolution)
//!   with window-truncation and cross-solver diagnostics attached;
//! * [`harmonic_model`] predicts the limiting oscillator ladder at a
//!   nondegenerate curvature maximum;
//! * [`weyl_count`] counts flux-lattice states below an energy exactly and
//!   compares them with the semiclassical density;
//! * [`write_spectrum_csv`] / [`write_weyl_csv`] store results in stable,
//!   byte-reproducible CSV form.

mod error;
mod harmonic;
mod operator;
mod report;
mod spectrum;
#[cfg(test)]
pub(crate) mod testutil;
mod weyl;

pub use error::QuantError;
pub use harmonic::{harmonic_model, HarmonicModel};
pub use operator::{
    a_minus1_operator, default_mode_count, quantize_reduced, EdgeMatrix, EdgeOperator,
    GUARD_MODES,
};
pub use report::{write_spectrum_csv, write_weyl_csv};
pub use spectrum::{spectrum_lowest, SpectrumDiagnostics, SpectrumResult, TRUNCATION_LIMIT};
pub use weyl::{weyl_count, WeylCount};
