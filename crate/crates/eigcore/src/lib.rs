//! Self-contained symmetric/Hermitian linear-algebra kernels.
//!
//! Every spectral quantity in this workspace ultimately reduces to one of four
//! problems, each solved here without external linear-algebra dependencies:
//!
//! * **lowest eigenvalues of a symmetric tridiagonal matrix** — the
//!   discretized transverse Schrödinger operators are tridiagonal, and the
//!   eigenvalue *counting function* is itself a deliverable (the Weyl law
//!   checks count lattice points under a band function), so eigenvalues are
//!   found by bisection on the Sturm sequence, which counts by construction;
//! * **eigenvectors of those tridiagonal matrices** — inverse iteration with
//!   a partial-pivoting tridiagonal factorization;
//! * **deflated resolvent solves** `(T − z)v = w − ⟨w,u⟩u`, `⟨v,u⟩ = 0` — the
//!   discrete analogue of the regularized resolvent that appears in the
//!   Schur-complement (Grushin) reduction of the edge operator; solved by
//!   conjugate gradients on the deflated system with the projection applied
//!   at every iteration;
//! * **lowest eigenvalues of dense Hermitian / large sparse symmetric
//!   operators** — Householder reduction to tridiagonal form (with a real
//!   fast path) and Lanczos with full reorthogonalization and thick restarts.
//!
//! # Conventions
//!
//! Tridiagonal operators carry a `spacing` field: they discretize a
//! continuum differential operator on a uniform grid, and all norms and
//! inner products on their vectors are *spacing-weighted*
//! (`⟨x,y⟩ = spacing·Σ xᵢyᵢ`) so that normalized eigenvectors approximate
//! L²-normalized eigenfunctions directly.
//!
//! All operations are pure: no global state, no interior mutability, and
//! every instance is `Send + Sync`. Parallel parameter sweeps happen in the
//! crates layered above; the only internal parallelism is the rank-2 update
//! of large dense Householder reductions.

mod dense;
mod deflate;
mod error;
mod lanczos;
mod probe;
mod sturm;
mod types;

pub use dense::{dense_hermitian_eigs, dense_symmetric_eigs, SymmetricMatrix};
pub use deflate::deflated_solve;
pub use error::EigError;
pub use lanczos::{lanczos_lowest, LanczosOptions, LanczosOutcome};
pub use probe::ProbeRng;
pub use sturm::{sturm_count_below, tridiag_eigvec, tridiag_lowest, tridiag_shifted_solve};
pub use types::{
    probe_symmetry, require_symmetric, HermitianMatrix, SparseHermitianOperator,
    TridiagonalOperator,
};

/// Relative accuracy of bisection eigenvalues, in units of the
/// eigenvalue's own magnitude. Bisection halves the bracket until it is
/// narrower than this times max(|lo|, |hi|) (or the iteration cap fires,
/// whichever comes first).
pub const BISECTION_REL_TOL: f64 = 1e-13;

/// Inverse-iteration eigenvector residual target: ‖(T−λ)v‖ ≤ this × ‖T‖.
pub const EIGVEC_RESIDUAL_TOL: f64 = 1e-9;

/// Relative tolerance of the deflated conjugate-gradient solve.
pub const DEFLATED_CG_TOL: f64 = 1e-12;

/// Orthogonality of the deflated solution against the deflation direction.
pub const DEFLATION_ORTH_TOL: f64 = 1e-12;

/// A deflation shift `z` closer than this (relative to the spectral width)
/// to a *non-deflated* eigenvalue makes the solve ill-posed.
pub const DEFLATION_ILLPOSED_TOL: f64 = 1e-10;

/// Hermiticity tolerance of dense matrices, relative to the largest entry.
pub const HERMITICITY_TOL: f64 = 1e-13;

/// Symmetry tolerance for sparse operators probed with random vectors.
pub const PROBE_SYMMETRY_TOL: f64 = 1e-10;
