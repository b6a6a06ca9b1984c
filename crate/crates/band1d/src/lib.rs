//! One-dimensional fibered band problem: the transverse Schrödinger family
//! `h[σ] = −d²/dt² + (σ − b_a(t)·t)²` on the real line, where the field
//! profile `b_a` takes the value 1 for `t > 0` and `a` for `t < 0`.
//!
//! The crate computes band values μ (eigenvalues of the fiber operator at
//! fixed σ), their σ-derivatives, the unique interior minimum
//! `(σ_a, β_a, μ''_a)`, and level sets `μ(σ) = E`. Everything reduces to
//! symmetric tridiagonal eigenproblems handled by `eigcore`; this crate owns
//! the discretization (Dirichlet truncation to `[−T, T]` with `t = 0` on a
//! grid node so the kink in the potential derivative stays on the mesh) and
//! the parameter-space searches on top.
//!
//! All functions are pure; there is no memoization cache (results are cheap
//! enough to recompute, and a cache would need cross-thread coordination
//! during parameter sweeps for no measurable gain).
//!
//! Regime restriction: the analysis that consumes these bands bounds the
//! momentum variable into a compact window around the band minimum before
//! any result is used, so the bounded substitute for σ that makes operator
//! families uniformly well-posed at |σ| → ∞ is taken to be the identity
//! here. Callers probing σ far outside `[−5, 25]` are outside the supported
//! window.

mod band;
mod error;
mod grid;
mod minimum;
mod params;
mod report;

pub use band::{
    assemble_transverse, band_state, band_value, band_value_auto, sign_changes, BandPoint,
};
pub use error::Band1dError;
pub use grid::TransverseGrid;
pub use minimum::{band_level_set, band_minimum, mu_derivative, BandMinimum};
pub use params::{step_field, ModelParams};
pub use report::write_band_csv;

/// Boundary amplitude above which the Dirichlet truncation is declared too
/// small: eigenfunction samples must decay below this at the domain ends.
pub const TRUNCATION_TOL: f64 = 1e-12;

/// Discretization-error target for Richardson-extrapolated band values.
pub const BAND_DISC_TARGET: f64 = 1e-8;
