//! Dense Hermitian/symmetric eigenvalues: Householder reduction to
//! tridiagonal form followed by Sturm bisection.
//!
//! The reduction is the classical one (EISPACK HTRIDI/TRED lineage): chains
//! of rank-2 Hermitian updates `A ← A − v q† − q v†`. A complex Hermitian
//! matrix reduces to a tridiagonal with complex off-diagonal entries whose
//! *magnitudes* feed the real bisection — a diagonal unitary similarity
//! makes them real without touching eigenvalues. Fourier-basis
//! quantizations of even curvature functions are purely real, so a real
//! symmetric path (half the memory, several times the speed, rayon-parallel
//! rank-2 updates) is provided alongside and used by the quantization crate
//! whenever imaginary parts vanish identically.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::EigError;
use crate::types::{HermitianMatrix, TridiagonalOperator};
use crate::{tridiag_lowest, HERMITICITY_TOL};

/// Row-major dense real symmetric matrix (fast path of
/// [`dense_hermitian_eigs`]).
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Validate symmetry (relative to largest entry) and finiteness.
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self, EigError> {
        if order == 0 || entries.len() != order * order {
            return Err(EigError::rejected(format!(
                "entry count {} does not match order {order}",
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(EigError::rejected("non-finite matrix entry"));
        }
        let scale = entries
            .iter()
            .fold(0.0_f64, |m, &x| m.max(x.abs()))
            .max(f64::MIN_POSITIVE);
        for i in 0..order {
            for j in i + 1..order {
                if (entries[i * order + j] - entries[j * order + i]).abs() > HERMITICITY_TOL * scale
                {
                    return Err(EigError::rejected(format!(
                        "symmetry violated at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SymmetricMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

// ======================================================================
// Real symmetric path
// ======================================================================

/// Reduce a real symmetric matrix (consumed as a flat buffer) to
/// tridiagonal `(d, e)` by Householder similarity transforms.
fn symmetric_to_tridiag(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0_f64; n.saturating_sub(1)];
    let mut v = vec![0.0_f64; n];
    let mut p = vec![0.0_f64; n];
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        // Column below the diagonal.
        let mut xnorm2 = 0.0;
        for i in 0..m {
            let x = a[(k + 1 + i) * n + k];
            xnorm2 += x * x;
        }
        let beta = xnorm2.sqrt();
        if beta <= f64::MIN_POSITIVE.sqrt() {
            e[k] = a[(k + 1) * n + k];
            continue;
        }
        let x1 = a[(k + 1) * n + k];
        let sign = if x1 >= 0.0 { 1.0 } else { -1.0 };
        // v = x + sign·β·e₁ avoids cancellation.
        for i in 0..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] += sign * beta;
        let vnorm2 = xnorm2 + 2.0 * beta * x1.abs() + beta * beta;
        let tau = 2.0 / vnorm2;

        // p = τ·A₂₂ v, computed on the trailing block.
        let base = k + 1;
        if m >= 384 {
            p[..m].par_iter_mut().enumerate().for_each(|(i, pi)| {
                let row = &a[(base + i) * n + base..(base + i) * n + base + m];
                let mut acc = 0.0;
                for j in 0..m {
                    acc += row[j] * v[j];
                }
                *pi = tau * acc;
            });
        } else {
            for i in 0..m {
                let row = &a[(base + i) * n + base..(base + i) * n + base + m];
                let mut acc = 0.0;
                for j in 0..m {
                    acc += row[j] * v[j];
                }
                p[i] = tau * acc;
            }
        }
        let kappa: f64 = 0.5 * tau * v[..m].iter().zip(&p[..m]).map(|(a, b)| a * b).sum::<f64>();
        for i in 0..m {
            p[i] -= kappa * v[i];
        }
        // A₂₂ ← A₂₂ − v pᵀ − p vᵀ (row-parallel when large).
        if m >= 384 {
            let v_ref = &v[..m];
            let p_ref = &p[..m];
            a.par_chunks_mut(n)
                .skip(base)
                .take(m)
                .enumerate()
                .for_each(|(i, row)| {
                    let (vi, pi) = (v_ref[i], p_ref[i]);
                    let row = &mut row[base..base + m];
                    for j in 0..m {
                        row[j] -= vi * p_ref[j] + pi * v_ref[j];
                    }
                });
        } else {
            for i in 0..m {
                let (vi, pi) = (v[i], p[i]);
                for j in 0..m {
                    a[(base + i) * n + base + j] -= vi * p[j] + pi * v[j];
                }
            }
        }
        e[k] = -sign * beta;
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    (d, e)
}

/// `k` smallest eigenvalues of a dense real symmetric matrix.
pub fn dense_symmetric_eigs(m: &SymmetricMatrix, k: usize) -> Result<Vec<f64>, EigError> {
    let n = m.order();
    if k == 0 || k > n {
        return Err(EigError::OutOfRange(format!(
            "requested {k} eigenvalues of an order-{n} matrix"
        )));
    }
    if n == 1 {
        return Ok(vec![m.entries()[0]]);
    }
    let mut a = m.entries().to_vec();
    let (d, e) = symmetric_to_tridiag(n, &mut a);
    let t = TridiagonalOperator::new(d, e, 1.0)?;
    tridiag_lowest(&t, k)
}

// ======================================================================
// Complex Hermitian path
// ======================================================================

fn hermitian_to_tridiag(n: usize, a: &mut [Complex64]) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0_f64; n.saturating_sub(1)];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let mut xnorm2 = 0.0;
        for i in 0..m {
            xnorm2 += a[(k + 1 + i) * n + k].norm_sqr();
        }
        let beta = xnorm2.sqrt();
        if beta <= f64::MIN_POSITIVE.sqrt() {
            e[k] = a[(k + 1) * n + k].norm();
            continue;
        }
        let x1 = a[(k + 1) * n + k];
        let phase = if x1.norm() > 0.0 {
            x1 / x1.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..m {
            v[i] = a[(k + 1 + i) * n + k];
        }
        v[0] += phase * beta;
        let vnorm2 = xnorm2 + 2.0 * beta * x1.norm() + beta * beta;
        let tau = 2.0 / vnorm2;

        let base = k + 1;
        let vm = &v[..m];
        if m >= 256 {
            p[..m].par_iter_mut().enumerate().for_each(|(i, pi)| {
                let row = &a[(base + i) * n + base..(base + i) * n + base + m];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    acc += row[j] * vm[j];
                }
                *pi = acc * tau;
            });
        } else {
            for i in 0..m {
                let row = &a[(base + i) * n + base..(base + i) * n + base + m];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    acc += row[j] * vm[j];
                }
                p[i] = acc * tau;
            }
        }
        let kappa: Complex64 = v[..m]
            .iter()
            .zip(&p[..m])
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * (0.5 * tau);
        for i in 0..m {
            p[i] -= kappa * v[i];
        }
        // A₂₂ ← A₂₂ − v p† − p v†.
        if m >= 256 {
            let v_ref = &v[..m];
            let p_ref = &p[..m];
            a.par_chunks_mut(n)
                .skip(base)
                .take(m)
                .enumerate()
                .for_each(|(i, row)| {
                    let (vi, pi) = (v_ref[i], p_ref[i]);
                    let row = &mut row[base..base + m];
                    for j in 0..m {
                        row[j] -= vi * p_ref[j].conj() + pi * v_ref[j].conj();
                    }
                });
        } else {
            for i in 0..m {
                let (vi, pi) = (v[i], p[i]);
                for j in 0..m {
                    a[(base + i) * n + base + j] -= vi * p[j].conj() + pi * v[j].conj();
                }
            }
        }
        // The transformed subdiagonal is −phase·β; only its magnitude
        // matters (diagonal unitary similarity).
        e[k] = beta;
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    (d, e)
}

/// `k` smallest eigenvalues of a dense complex Hermitian matrix
/// (non-decreasing, backward-stable: Householder + bisection).
pub fn dense_hermitian_eigs(m: &HermitianMatrix, k: usize) -> Result<Vec<f64>, EigError> {
    let n = m.order();
    if k == 0 || k > n {
        return Err(EigError::OutOfRange(format!(
            "requested {k} eigenvalues of an order-{n} matrix"
        )));
    }
    if n == 1 {
        return Ok(vec![m.entries()[0].re]);
    }
    let mut a = m.entries().to_vec();
    let (d, e) = hermitian_to_tridiag(n, &mut a);
    let t = TridiagonalOperator::new(d, e, 1.0)?;
    tridiag_lowest(&t, k)
}

// ======================================================================
// Small full eigensolver (cyclic Jacobi) for restart bookkeeping
// ======================================================================

/// All eigenpairs of a small dense symmetric matrix by the cyclic Jacobi
/// method. Returns `(values ascending, column eigenvectors)`.
///
/// Used for the Rayleigh–Ritz step of the restarted Lanczos iteration,
/// where the projected matrices stay small (≲ a few hundred) and
/// orthogonality of near-degenerate Ritz vectors matters more than speed —
/// Jacobi delivers mutually orthogonal vectors by construction.
pub(crate) fn jacobi_eig_full(n: usize, a_in: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut a = a_in.to_vec();
    let mut v = vec![0.0_f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        s
    };
    let scale: f64 = a.iter().fold(0.0_f64, |m, &x| m.max(x.abs())).max(1e-300);
    for _sweep in 0..64 {
        if off(&a).sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[i * n + i], i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vectors = vec![0.0_f64; n * n];
    for (newcol, &(_, oldcol)) in pairs.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + newcol] = v[i * n + oldcol];
        }
    }
    (values, vectors)
}
