use num_complex::Complex64;

use crate::error::EigError;
use crate::probe::ProbeRng;
use crate::{HERMITICITY_TOL, PROBE_SYMMETRY_TOL};

// ======================================================================
// Symmetric tridiagonal operators on a uniform grid
// ======================================================================

/// A real symmetric tridiagonal matrix together with the grid spacing of the
/// discretization it came from.
///
/// This is the carrier for one-dimensional Schrödinger operators
/// `−d²/dt² + V(t)` discretized by second-order central differences on a
/// uniform grid: `diag[i] = 2/δ² + V(tᵢ)` and `offdiag[i] = −1/δ²` (Dirichlet
/// ends), possibly with boundary modifications (a Neumann ghost-node
/// symmetrization scales the first off-diagonal entry by √2).
///
/// The `spacing` field is metadata for norms: vectors paired with this
/// operator use the spacing-weighted inner product `⟨x,y⟩ = δ·Σ xᵢyᵢ`, so a
/// unit vector approximates an L²-normalized function.
#[derive(Clone, Debug)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    spacing: f64,
}

impl TridiagonalOperator {
    /// Validate and build. Requires `diag.len() ≥ 2`,
    /// `offdiag.len() = diag.len() − 1`, finite entries, positive spacing.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>, spacing: f64) -> Result<Self, EigError> {
        if diag.len() < 2 {
            return Err(EigError::rejected(format!(
                "tridiagonal order must be >= 2, got {}",
                diag.len()
            )));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(EigError::rejected(format!(
                "offdiag length {} does not match order {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(EigError::rejected(format!("invalid spacing {spacing}")));
        }
        if diag.iter().chain(offdiag.iter()).any(|x| !x.is_finite()) {
            return Err(EigError::rejected("non-finite matrix entry"));
        }
        Ok(TridiagonalOperator {
            diag,
            offdiag,
            spacing,
        })
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Off-diagonal entries (length `order − 1`).
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Grid spacing used for weighted norms.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Width of the Gershgorin enclosure; the "spectral width" against which
    /// relative eigenvalue accuracies are measured. Never returns 0.
    pub fn spectral_width(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        (hi - lo).max(f64::MIN_POSITIVE)
    }

    /// An upper bound for ‖T‖₂ (max Gershgorin magnitude).
    pub fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// `y = T x` (unweighted matrix action).
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.order();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }

    /// Spacing-weighted inner product `δ·Σ xᵢyᵢ`.
    pub fn dot(&self, x: &[f64], y: &[f64]) -> f64 {
        self.spacing * x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Spacing-weighted ℓ² norm.
    pub fn norm(&self, x: &[f64]) -> f64 {
        self.dot(x, x).sqrt()
    }
}

// ======================================================================
// Dense Hermitian matrices
// ======================================================================

/// A dense complex Hermitian matrix, row-major.
///
/// Used as the carrier of Fourier-basis quantizations of edge symbols; its
/// Hermiticity is a *structural* invariant checked on construction, because
/// a silently non-Hermitian quantization would corrupt every downstream
/// eigenvalue without any solver-side symptom.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validate Hermiticity (relative to the largest entry magnitude) and
    /// finiteness, then build.
    pub fn new(order: usize, entries: Vec<Complex64>) -> Result<Self, EigError> {
        if order == 0 {
            return Err(EigError::rejected("empty matrix"));
        }
        if entries.len() != order * order {
            return Err(EigError::rejected(format!(
                "entry count {} does not match order {}",
                entries.len(),
                order
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EigError::rejected("non-finite matrix entry"));
        }
        let scale = entries
            .iter()
            .map(|z| z.norm_sqr())
            .fold(0.0_f64, f64::max)
            .sqrt()
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for i in 0..order {
            for j in i..order {
                let d = (entries[i * order + j] - entries[j * order + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        if worst > HERMITICITY_TOL * scale {
            return Err(EigError::rejected(format!(
                "Hermiticity violated: max |A[i][j] - conj(A[j][i])| = {:.3e} vs allowed {:.3e}",
                worst,
                HERMITICITY_TOL * scale
            )));
        }
        Ok(HermitianMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry (i, j).
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.order + j]
    }

    /// Frobenius norm (used as the ‖M‖ scale in residual contracts).
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest deviation from exact Hermiticity, relative to the largest
    /// entry magnitude (diagnostic; the constructor already enforces it).
    pub fn hermiticity_defect(&self) -> f64 {
        let scale = self
            .entries
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for i in 0..self.order {
            for j in i..self.order {
                worst = worst.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        worst / scale
    }
}

// ======================================================================
// Matrix-free symmetric operators
// ======================================================================

/// A real-symmetric operator given only through its matrix-vector action.
///
/// The two-dimensional strip operators never materialize their matrices
/// (order ∼ 10⁵–10⁶); they implement this trait and are diagonalized by
/// [`crate::lanczos_lowest`]. Implementors must be symmetric:
/// `⟨Av, w⟩ = ⟨Aw, v⟩`, which [`probe_symmetry`] spot-checks with random
/// probes.
pub trait SparseHermitianOperator: Sync {
    /// Dimension of the underlying space.
    fn order(&self) -> usize;

    /// `y = A x`. `x.len() == y.len() == order()`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Spot-check symmetry of a matrix-free operator with `n_probes` pairs of
/// deterministic pseudo-random vectors; returns the worst relative defect
/// `|⟨Av,w⟩ − ⟨Aw,v⟩| / (‖Av‖‖w‖ + ‖Aw‖‖v‖)`.
pub fn probe_symmetry<A: SparseHermitianOperator + ?Sized>(a: &A, n_probes: usize) -> f64 {
    let n = a.order();
    let mut rng = ProbeRng::new(0x5ee3_d00d);
    let mut worst = 0.0_f64;
    let mut av = vec![0.0; n];
    let mut aw = vec![0.0; n];
    for _ in 0..n_probes {
        let v = rng.vector(n);
        let w = rng.vector(n);
        a.apply(&v, &mut av);
        a.apply(&w, &mut aw);
        let d1: f64 = av.iter().zip(&w).map(|(x, y)| x * y).sum();
        let d2: f64 = aw.iter().zip(&v).map(|(x, y)| x * y).sum();
        let nrm = |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>().sqrt();
        let scale = (nrm(&av) * nrm(&w) + nrm(&aw) * nrm(&v)).max(f64::MIN_POSITIVE);
        worst = worst.max((d1 - d2).abs() / scale);
    }
    worst
}

/// Convenience wrapper asserting the probe-symmetry invariant.
pub fn require_symmetric<A: SparseHermitianOperator + ?Sized>(
    a: &A,
    n_probes: usize,
) -> Result<(), EigError> {
    let defect = probe_symmetry(a, n_probes);
    if defect > PROBE_SYMMETRY_TOL {
        return Err(EigError::rejected(format!(
            "operator failed the symmetry probe: relative defect {defect:.3e}"
        )));
    }
    Ok(())
}
