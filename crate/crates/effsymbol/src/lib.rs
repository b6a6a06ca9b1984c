//! Effective-symbol coefficients of the reduced edge model.
//!
//! The Schur (Grushin) reduction of the magnetic edge operator compresses
//! the transverse direction into a scalar symbol on the boundary. To the
//! order carried here, that symbol is determined by three numbers per field
//! ratio `a`, all evaluated at the band minimum `σ(a)`:
//!
//! * `g1` — the first-order coupling per unit curvature,
//!   `⟨−(2t(σ−b_at)² + b_at²(σ−b_at)) u, u⟩` ([`n1_element`], [`q1_pm`]);
//!   equals `−M₃(a) > 0`, so curvature maxima attract,
//! * `∂_σ g1` — its σ-slope, which enters as a momentum shift,
//! * `g2` — the second-order block combining the deflated reduced
//!   resolvent of the transverse operator with a diagonal quadratic
//!   element ([`q2_pm`]).
//!
//! [`reduced_symbol`] assembles the per-arclength sequences
//! `lin = k·g1`, `c1 = k·∂_σg1/μ''`, `quad = k²·g2 + (k·∂_σg1)²/(2μ'')`
//! on a curve's sample grid, the exact data the edge quantization consumes.
//!
//! Two deliberate structural points, both verified by tests rather than
//! assumed: the coupling separates as curvature × (σ-only factor), and the
//! transverse cutoff function is replaced by 1 — the ground-state tails at
//! the truncated domain boundary are below 1e−12, so the cutoff is
//! numerically inert at the σ values used here.
//!
//! In the symmetric case `a = −1` the first-order structure vanishes
//! identically and `g2` becomes a universal constant. Its measured value,
//! `+0.0650569890`, does not match the quoted closed-form constant
//! `−¼ + G ≈ −0.6199` for the same quantity; both routes are computed and
//! the discrepancy is pinned in tests instead of being reconciled by hand.

mod elements;
mod error;
mod reduced;
mod report;

pub use elements::{n1_element, q1_pm, q2_pm};
pub use error::EffSymbolError;
pub use reduced::{
    reduced_symbol, reduced_symbol_from_parts, symbol_coefficients, ReducedSymbol,
    SymbolCoefficients,
};
pub use report::write_effsym_csv;
