//! Closed planar edge curves in arc-length form.
//!
//! The crate turns an analytic description of a smooth closed boundary
//! (circle, ellipse, cosine-perturbed circle) into the quantities the
//! effective edge models consume:
//!
//! * a uniform arc-length grid `s ∈ [−L, L)` with curvature, position and
//!   original-parameter samples ([`CurveGeometry`], built by
//!   [`curve_geometry`]),
//! * the unique curvature maximum together with the second arc-length
//!   derivative `k''(s_max)` at that point ([`curvature_max`]),
//! * the flux offsets `θ(ħ)` and `α_ħ` produced by the enclosed area
//!   ([`flux_offsets`]),
//! * a CSV writer for the sampled curvature profile
//!   ([`write_geometry_csv`]).
//!
//! Arc length is accumulated with cell-wise Simpson quadrature on a
//! parameter grid at least four times finer than the requested arc grid,
//! then inverted with bracketed Newton iteration; enclosed area uses the
//! periodic trapezoid rule on `½∮(x y' − y x')dφ`, which is spectrally
//! accurate for these analytic curves. Curves that fail a turning-number
//! or positivity check are rejected rather than silently accepted.
//!
//! The curvature maximum is located on the sampled grid, refined by a
//! parabolic fit, and `k''` is evaluated with a five-point stencil on a
//! periodic cubic spline of the curvature profile. Curves with a
//! degenerate (non-unique) maximum — the circle, or symmetric multi-lobe
//! perturbations — are reported as [`GeometryError::NonUniqueMax`] instead
//! of returning an arbitrary lobe.

mod error;
mod flux;
mod maxima;
mod report;
mod sampling;
mod spec;

pub use error::GeometryError;
pub use flux::{flux_offsets, FluxOffsets};
pub use maxima::{curvature_max, CurvatureMax};
pub use report::write_geometry_csv;
pub use sampling::{curve_geometry, CurveGeometry};
pub use spec::CurveSpec;
