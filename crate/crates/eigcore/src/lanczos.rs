//! Restarted Lanczos iteration with full reorthogonalization for the
//! lowest eigenpairs of a matrix-free symmetric operator.
//!
//! The basis is kept explicitly orthonormal (two-pass Gram–Schmidt against
//! every stored vector), so the projected matrix is trustworthy without
//! selective-reorthogonalization bookkeeping. When the basis hits its cap,
//! the iteration thick-restarts: the best Ritz vectors are kept together
//! with the last residual direction, the projected matrix collapsing to an
//! arrowhead (Ritz values on the diagonal, residual couplings on the
//! border). Convergence is certified by explicitly computed residuals
//! ‖A y − θ y‖, not by the cheap border estimate.

use crate::dense::jacobi_eig_full;
use crate::error::EigError;
use crate::probe::ProbeRng;
use crate::types::SparseHermitianOperator;

/// Tuning knobs for [`lanczos_lowest`].
#[derive(Clone, Debug)]
pub struct LanczosOptions {
    /// Maximum number of stored basis vectors per cycle.
    pub max_basis: usize,
    /// Maximum number of thick restarts before giving up (the first
    /// build-up cycle is not counted as a restart).
    pub restarts: usize,
    /// Residual tolerance, relative to the largest Ritz magnitude seen
    /// (a growing lower bound on the spectral radius, floored at 1).
    pub tol: f64,
    /// Seed for the deterministic starting vector.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            max_basis: 240,
            restarts: 5,
            tol: 1e-10,
            seed: 0x1a5c_705e,
        }
    }
}

/// Result of a Lanczos run. `converged == false` marks a partial result
/// that exhausted its restart budget; values/vectors then hold the best
/// available Ritz approximations with their actual residuals.
#[derive(Clone, Debug)]
pub struct LanczosOutcome {
    /// Ritz values, ascending; the first `k` requested eigenvalues.
    pub values: Vec<f64>,
    /// Matching unit Ritz vectors.
    pub vectors: Vec<Vec<f64>>,
    /// Explicit residual norms ‖A y − θ y‖ per pair.
    pub residuals: Vec<f64>,
    /// Whether every requested pair met the tolerance.
    pub converged: bool,
    /// Number of operator applications performed.
    pub applies: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthogonalize `w` against the basis twice, accumulating first-pass plus
/// correction coefficients (the measured column ⟨vᵢ, w⟩ of the projected
/// matrix when `w = A vⱼ`).
fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>], coeffs: &mut [f64]) {
    for _pass in 0..2 {
        for (i, v) in basis.iter().enumerate() {
            let c = dot(v, w);
            axpy(w, -c, v);
            coeffs[i] += c;
        }
    }
}

/// `k` lowest eigenpairs of a matrix-free symmetric operator.
///
/// Returns `Ok` with `converged == false` (rather than an error) when the
/// restart budget runs out, so callers can inspect the partial result and
/// its residuals. `Err` is reserved for rejected input.
pub fn lanczos_lowest(
    op: &dyn SparseHermitianOperator,
    k: usize,
    opts: &LanczosOptions,
) -> Result<LanczosOutcome, EigError> {
    let n = op.order();
    if n == 0 {
        return Err(EigError::rejected("operator of order zero"));
    }
    if k == 0 || k > n {
        return Err(EigError::OutOfRange(format!(
            "requested {k} eigenpairs of an order-{n} operator"
        )));
    }
    let max_basis = opts.max_basis.clamp(k + 2, n.max(k + 2)).min(n);
    let mut rng = ProbeRng::new(opts.seed);
    let mut applies = 0usize;

    // Basis vectors and the projected symmetric matrix (filled entrywise,
    // mirrored; an arrowhead after restarts, tridiagonal-plus-noise during
    // plain build-up).
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_basis);
    let mut h = vec![0.0_f64; max_basis * max_basis];

    let normalize_probe = |rng: &mut ProbeRng, basis: &[Vec<f64>]| -> Option<Vec<f64>> {
        for _attempt in 0..5 {
            let mut w = rng.vector(n);
            let mut scratch = vec![0.0; basis.len()];
            orthogonalize(&mut w, basis, &mut scratch);
            let b = norm(&w);
            if b > 1e-8 {
                for x in &mut w {
                    *x /= b;
                }
                return Some(w);
            }
        }
        None
    };

    let v0 = normalize_probe(&mut rng, &basis)
        .ok_or_else(|| EigError::rejected("could not build a starting vector"))?;
    basis.push(v0);

    let mut best: Option<LanczosOutcome> = None;
    let mut scale_floor = 1.0_f64;

    for cycle in 0..=opts.restarts {
        // --- Expansion: apply A to each new basis vector, recording its
        // projected column, until the basis is full (or the space is
        // exhausted).
        let start_col = if cycle == 0 { 0 } else { basis.len() - 1 };
        let mut w_last: Option<(Vec<f64>, f64)> = None;
        let mut m;
        let mut j = start_col;
        loop {
            let mut w = vec![0.0_f64; n];
            op.apply(&basis[j], &mut w);
            applies += 1;
            let mut coeffs = vec![0.0_f64; basis.len()];
            orthogonalize(&mut w, &basis, &mut coeffs);
            for (i, &c) in coeffs.iter().enumerate() {
                h[i * max_basis + j] = c;
                h[j * max_basis + i] = c;
            }
            let beta = norm(&w);
            m = basis.len();
            if basis.len() == max_basis {
                if beta > 1e-14 * scale_floor {
                    for x in &mut w {
                        *x /= beta;
                    }
                    w_last = Some((w, beta));
                }
                break;
            }
            if beta > 1e-14 * scale_floor {
                h[(j + 1) * max_basis + j] = beta;
                h[j * max_basis + (j + 1)] = beta;
                for x in &mut w {
                    *x /= beta;
                }
                basis.push(w);
            } else {
                // Invariant subspace found. Either it already contains the
                // requested eigenpairs or a fresh direction is needed.
                if basis.len() >= k.max(2) {
                    break;
                }
                match normalize_probe(&mut rng, &basis) {
                    Some(fresh) => basis.push(fresh),
                    None => break,
                }
            }
            j += 1;
        }

        // --- Rayleigh–Ritz on the projected matrix.
        let mut hm = vec![0.0_f64; m * m];
        for r in 0..m {
            for c in 0..m {
                hm[r * m + c] = h[r * max_basis + c];
            }
        }
        let (theta, s) = jacobi_eig_full(m, &hm);
        scale_floor = theta
            .iter()
            .fold(scale_floor, |acc, &t| acc.max(t.abs()))
            .max(1.0);

        let keep = (k + 8.max(k)).min(m.saturating_sub(1)).max(k.min(m));
        let ritz_count = keep.max(k).min(m);
        let mut ritz: Vec<Vec<f64>> = Vec::with_capacity(ritz_count);
        for col in 0..ritz_count {
            let mut y = vec![0.0_f64; n];
            for (jv, v) in basis.iter().enumerate() {
                axpy(&mut y, s[jv * m + col], v);
            }
            let ny = norm(&y);
            if ny > 0.0 {
                for x in &mut y {
                    *x /= ny;
                }
            }
            ritz.push(y);
        }

        // --- Explicit residuals for the k requested pairs.
        let mut residuals = Vec::with_capacity(k);
        for (col, y) in ritz.iter().take(k).enumerate() {
            let mut ay = vec![0.0_f64; n];
            op.apply(y, &mut ay);
            applies += 1;
            axpy(&mut ay, -theta[col], y);
            residuals.push(norm(&ay));
        }
        let tol_abs = opts.tol * scale_floor;
        let converged = residuals.iter().all(|&r| r <= tol_abs);
        let outcome = LanczosOutcome {
            values: theta[..k].to_vec(),
            vectors: ritz[..k].to_vec(),
            residuals: residuals.clone(),
            converged,
            applies,
        };
        let improved = match (&best, &outcome) {
            (None, _) => true,
            (Some(b), o) => {
                o.residuals.iter().cloned().fold(0.0_f64, f64::max)
                    < b.residuals.iter().cloned().fold(0.0_f64, f64::max)
            }
        };
        if improved {
            best = Some(outcome.clone());
        }
        if converged {
            return Ok(outcome);
        }
        if cycle == opts.restarts {
            break;
        }

        // --- Thick restart: keep the best Ritz vectors plus the residual
        // continuation direction; the projected matrix becomes an
        // arrowhead.
        let Some((v_cont, beta_last)) = w_last else {
            // Exhausted space without a continuation direction: the Ritz
            // data is as exact as it gets.
            break;
        };
        let kept = ritz_count.min(max_basis - 1);
        let mut new_basis: Vec<Vec<f64>> = ritz.into_iter().take(kept).collect();
        h.iter_mut().for_each(|x| *x = 0.0);
        for (i, &t) in theta.iter().take(kept).enumerate() {
            h[i * max_basis + i] = t;
            let b = beta_last * s[(m - 1) * m + i];
            h[i * max_basis + kept] = b;
            h[kept * max_basis + i] = b;
        }
        // Re-orthogonalize the continuation vector against the kept Ritz
        // vectors (defensive; exact arithmetic already guarantees it).
        let mut vc = v_cont;
        let mut scratch = vec![0.0; new_basis.len()];
        orthogonalize(&mut vc, &new_basis, &mut scratch);
        let nb = norm(&vc);
        if nb > 1e-14 {
            for x in &mut vc {
                *x /= nb;
            }
            new_basis.push(vc);
        }
        basis = new_basis;
    }

    Ok(best.expect("at least one Rayleigh-Ritz cycle ran"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    struct DiagOp {
        d: Vec<f64>,
    }
    impl SparseHermitianOperator for DiagOp {
        fn order(&self) -> usize {
            self.d.len()
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            for i in 0..self.d.len() {
                y[i] = self.d[i] * x[i];
            }
        }
    }

    /// Five-point Dirichlet Laplacian on an `nx × nx` interior grid with
    /// unit spacing (diagonal 4, nearest neighbours −1).
    struct Grid2d {
        nx: usize,
    }
    impl SparseHermitianOperator for Grid2d {
        fn order(&self) -> usize {
            self.nx * self.nx
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            let nx = self.nx;
            for i in 0..nx {
                for j in 0..nx {
                    let idx = i * nx + j;
                    let mut v = 4.0 * x[idx];
                    if i > 0 {
                        v -= x[idx - nx];
                    }
                    if i + 1 < nx {
                        v -= x[idx + nx];
                    }
                    if j > 0 {
                        v -= x[idx - 1];
                    }
                    if j + 1 < nx {
                        v -= x[idx + 1];
                    }
                    y[idx] = v;
                }
            }
        }
    }

    #[test]
    fn diagonal_one_to_thousand() {
        let op = DiagOp {
            d: (1..=1000).map(|i| i as f64).collect(),
        };
        let out = lanczos_lowest(&op, 3, &LanczosOptions::default()).unwrap();
        assert!(out.converged, "residuals {:?}", out.residuals);
        for (got, want) in out.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn two_dimensional_dirichlet_laplacian_closed_form() {
        let nx = 40;
        let op = Grid2d { nx };
        let out = lanczos_lowest(&op, 5, &LanczosOptions::default()).unwrap();
        assert!(out.converged, "residuals {:?}", out.residuals);
        let mut expect: Vec<f64> = Vec::new();
        for i in 1..=nx {
            for j in 1..=nx {
                let si = (i as f64 * PI / (2.0 * (nx as f64 + 1.0))).sin();
                let sj = (j as f64 * PI / (2.0 * (nx as f64 + 1.0))).sin();
                expect.push(4.0 * si * si + 4.0 * sj * sj);
            }
        }
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in out.values.iter().zip(&expect) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn ritz_vectors_are_orthonormal_eigenvectors() {
        let op = DiagOp {
            d: (1..=200).map(|i| (i as f64).sqrt()).collect(),
        };
        let out = lanczos_lowest(&op, 4, &LanczosOptions::default()).unwrap();
        assert!(out.converged);
        for (a, va) in out.vectors.iter().enumerate() {
            for (b, vb) in out.vectors.iter().enumerate() {
                let d = dot(va, vb);
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-9);
            }
        }
        // Residuals were verified explicitly inside the solver; check the
        // reported numbers are small too.
        for r in &out.residuals {
            assert!(*r < 1e-9);
        }
    }

    #[test]
    fn degenerate_cluster_resolved() {
        // Eigenvalue 1 with multiplicity 3 at the bottom.
        let mut d = vec![1.0, 1.0, 1.0];
        d.extend((0..300).map(|i| 2.0 + i as f64 * 0.01));
        let op = DiagOp { d };
        let out = lanczos_lowest(&op, 3, &LanczosOptions::default()).unwrap();
        assert!(out.converged);
        for v in &out.values {
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_zero_requests() {
        let op = DiagOp { d: vec![1.0, 2.0] };
        assert!(lanczos_lowest(&op, 0, &LanczosOptions::default()).is_err());
        assert!(lanczos_lowest(&op, 3, &LanczosOptions::default()).is_err());
    }

    #[test]
    fn small_space_saturates_exactly() {
        let op = DiagOp {
            d: vec![5.0, -1.0, 2.0, 0.5],
        };
        let out = lanczos_lowest(&op, 4, &LanczosOptions::default()).unwrap();
        assert!(out.converged);
        let want = [-1.0, 0.5, 2.0, 5.0];
        for (g, w) in out.values.iter().zip(want) {
            assert!((g - w).abs() < 1e-10);
        }
    }
}
