//! Deflated resolvent solves.
//!
//! The Schur-complement reduction of the edge operator needs the
//! *regularized* resolvent: `(T − z)⁻¹` restricted to the orthogonal
//! complement of a distinguished direction `u` (the transverse ground
//! state), evaluated exactly at `z` equal to that direction's eigenvalue —
//! where the plain resolvent blows up. With the rank-one deflation
//! `P = I − u uᵀ` the operator `P(T − z)P` is well conditioned on `u^⊥`, and
//! for the workspace's use cases (`z` at or below the deflated ground
//! eigenvalue) it is positive definite there, so conjugate gradients apply.
//! The projection is reapplied every iteration to stop round-off from
//! re-growing a `u` component.

use crate::error::EigError;
use crate::types::TridiagonalOperator;
use crate::{sturm_count_below, DEFLATED_CG_TOL, DEFLATION_ILLPOSED_TOL};

/// Solve `(T − z)v = w − ⟨w,u⟩u` with `⟨v,u⟩ = 0`.
///
/// `u` must have unit spacing-weighted norm and be either an eigenvector of
/// `T` or the direction deflated out of the system; all inner products are
/// spacing-weighted. Errors if `z` sits within
/// [`DEFLATION_ILLPOSED_TOL`] × (spectral width) of an eigenvalue *other*
/// than the one deflated by `u`, since the restricted resolvent does not
/// exist there.
pub fn deflated_solve(
    t: &TridiagonalOperator,
    z: f64,
    u: &[f64],
    w: &[f64],
) -> Result<Vec<f64>, EigError> {
    let n = t.order();
    if u.len() != n || w.len() != n {
        return Err(EigError::rejected(format!(
            "dimension mismatch: order {n}, u {}, w {}",
            u.len(),
            w.len()
        )));
    }
    if !z.is_finite() || u.iter().chain(w.iter()).any(|x| !x.is_finite()) {
        return Err(EigError::rejected("non-finite input"));
    }
    let un = t.norm(u);
    if (un - 1.0).abs() > 1e-6 {
        return Err(EigError::rejected(format!(
            "deflation direction not normalized: ‖u‖ = {un}"
        )));
    }

    let width = t.spectral_width();
    let window = DEFLATION_ILLPOSED_TOL * width;
    // How many eigenvalues sit within the ill-posedness window of z?
    let nearby = sturm_count_below(t, z + window) - sturm_count_below(t, z - window);
    if nearby > 0 {
        // At most one may be there, and only if u is its eigenvector
        // (that one is deflated away; any other makes the solve singular).
        let mut tu = vec![0.0; n];
        t.apply(u, &mut tu);
        for i in 0..n {
            tu[i] -= z * u[i];
        }
        let ures = t.norm(&tu);
        let u_is_eigvec_at_z = ures <= 1e-6 * width;
        if nearby > 1 || !u_is_eigvec_at_z {
            return Err(EigError::IllPosed(format!(
                "{nearby} eigenvalue(s) within {window:.3e} of z = {z}, and the deflation \
                 direction does not account for them (‖(T−z)u‖ = {ures:.3e})"
            )));
        }
    }

    let dot = |x: &[f64], y: &[f64]| t.dot(x, y);
    let project = |x: &mut [f64]| {
        let c = dot(x, u);
        for (xi, ui) in x.iter_mut().zip(u) {
            *xi -= c * ui;
        }
    };

    // Right-hand side: w − ⟨w,u⟩u, projected (idempotent cleanup).
    let mut rhs = w.to_vec();
    project(&mut rhs);
    let rhs_norm = t.norm(&rhs);
    let w_norm = t.norm(w).max(f64::MIN_POSITIVE);
    if rhs_norm <= 1e-300 {
        return Ok(vec![0.0; n]);
    }

    // Conjugate gradients on A = P(T − z)P restricted to u^⊥.
    let apply_a = |x: &[f64], y: &mut [f64]| {
        t.apply(x, y);
        for i in 0..n {
            y[i] -= z * x[i];
        }
    };
    let mut v = vec![0.0; n];
    let mut r = rhs.clone();
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let tol2 = (DEFLATED_CG_TOL * w_norm).powi(2);
    let max_iter = 20 * n + 200;
    let mut converged = rr <= tol2;
    for _ in 0..max_iter {
        if converged {
            break;
        }
        apply_a(&p, &mut ap);
        project(&mut ap);
        let pap = dot(&p, &ap);
        if !(pap.is_finite()) || pap.abs() <= 1e-300 {
            return Err(EigError::NonConverged(format!(
                "conjugate-gradient breakdown (pᵀAp = {pap:.3e}); \
                 the deflated operator is not positive definite at z = {z}"
            )));
        }
        let alpha = rr / pap;
        for i in 0..n {
            v[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        // Re-projection every iteration keeps round-off from feeding the
        // deflated direction back into the Krylov space.
        project(&mut v);
        project(&mut r);
        let rr_new = dot(&r, &r);
        if rr_new <= tol2 {
            converged = true;
            break;
        }
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    if !converged {
        return Err(EigError::NonConverged(format!(
            "deflated CG stalled at residual {:.3e} (target {:.3e})",
            rr.sqrt(),
            tol2.sqrt()
        )));
    }
    project(&mut v);
    Ok(v)
}
