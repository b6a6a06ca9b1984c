//! Low eigenvalues of an assembled edge operator, with window-health
//! diagnostics.
//!
//! Values come from the dense direct solver, which is exact to round-off
//! and resolves near-degenerate tunneling pairs that iterative methods
//! merge. A restarted Lanczos pass on the same matrix supplies the
//! eigenvectors used for diagnostics only: the coefficient mass a state
//! leaves on the outermost retained Fourier modes (the truncation check)
//! and an independent consistency gap between the two solvers.

use eigcore::{
    dense_hermitian_eigs, dense_symmetric_eigs, lanczos_lowest, HermitianMatrix, LanczosOptions,
    SparseHermitianOperator, SymmetricMatrix,
};

use crate::error::{invalid, QuantError};
use crate::operator::{EdgeMatrix, EdgeOperator};

/// Largest edge-coefficient mass a returned eigenvector may carry before
/// the window is declared too small.
pub const TRUNCATION_LIMIT: f64 = 1e-10;

/// Deterministic probe seed for the diagnostic Lanczos pass.
const DIAGNOSTIC_SEED: u64 = 0x5eed_ed9e;

/// Health indicators attached to a spectrum.
#[derive(Clone, Copy, Debug)]
pub struct SpectrumDiagnostics {
    /// Worst coefficient mass on the outermost window modes over the
    /// diagnostic eigenvectors. Must stay at or below
    /// [`TRUNCATION_LIMIT`]; [`spectrum_lowest`] errors otherwise.
    pub truncation_mass: f64,
    /// Relative Hermiticity defect of the raw coefficient transforms
    /// (copied from the operator).
    pub hermiticity_residual: f64,
    /// Largest distance from a diagnostic Lanczos Ritz value to the dense
    /// eigenvalue set. Near-degenerate pairs can make individual Ritz
    /// pairs sit anywhere inside the pair, so this is a set distance, not
    /// an index-wise comparison.
    pub solver_gap: f64,
    /// Whether the diagnostic pass met its own residual tolerance. The
    /// dense values are authoritative either way.
    pub diagnostics_converged: bool,
}

/// Lowest eigenvalues of one quantized operator.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub hbar: f64,
    pub theta: f64,
    /// Ascending eigenvalues, as many as requested.
    pub eigenvalues: Vec<f64>,
    pub diagnostics: SpectrumDiagnostics,
}

impl SpectrumResult {
    /// Number of computed eigenvalues at or below `e`. Counts within the
    /// computed list only; it saturates at the requested count.
    pub fn count_below(&self, e: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| x <= e).count()
    }
}

/// Dense symmetric matrix as a matrix-free operator.
struct DenseReal<'a>(&'a SymmetricMatrix);

impl SparseHermitianOperator for DenseReal<'_> {
    fn order(&self) -> usize {
        self.0.order()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.0.order();
        let e = self.0.entries();
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = e[i * n..(i + 1) * n]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum();
        }
    }
}

/// Real doubling `[[Re H, −Im H], [Im H, Re H]]` of a Hermitian matrix as a
/// matrix-free symmetric operator. Every eigenvalue of `H` appears twice;
/// eigenvectors split as `(Re ψ, Im ψ)`.
struct RealifiedHermitian<'a>(&'a HermitianMatrix);

impl SparseHermitianOperator for RealifiedHermitian<'_> {
    fn order(&self) -> usize {
        2 * self.0.order()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.0.order();
        let e = self.0.entries();
        let (xr, xi) = x.split_at(n);
        let (yr, yi) = y.split_at_mut(n);
        for i in 0..n {
            let mut sr = 0.0;
            let mut si = 0.0;
            for j in 0..n {
                let h = e[i * n + j];
                sr += h.re * xr[j] - h.im * xi[j];
                si += h.re * xi[j] + h.im * xr[j];
            }
            yr[i] = sr;
            yi[i] = si;
        }
    }
}

/// Mass on the outermost retained mode at each window end, for a real
/// eigenvector (unit-normalized defensively).
fn edge_mass_real(v: &[f64]) -> f64 {
    let total: f64 = v.iter().map(|x| x * x).sum();
    if total <= 0.0 {
        return f64::INFINITY;
    }
    let n = v.len();
    (v[0] * v[0] + v[n - 1] * v[n - 1]) / total
}

/// Same for a realified complex eigenvector: both the real and imaginary
/// coordinates of the first and last mode contribute.
fn edge_mass_realified(v: &[f64]) -> f64 {
    let total: f64 = v.iter().map(|x| x * x).sum();
    if total <= 0.0 {
        return f64::INFINITY;
    }
    let n = v.len() / 2;
    let mass =
        v[0] * v[0] + v[n - 1] * v[n - 1] + v[n] * v[n] + v[2 * n - 1] * v[2 * n - 1];
    mass / total
}

fn set_distance(values: &[f64], reference: &[f64]) -> f64 {
    values
        .iter()
        .map(|&x| {
            reference
                .iter()
                .map(|&r| (x - r).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// The `n` lowest eigenvalues of the operator, plus diagnostics.
///
/// Fails with [`QuantError::ModeTruncation`] when a diagnostic eigenvector
/// keeps more than [`TRUNCATION_LIMIT`] of its mass on the outermost
/// retained modes — the spectrum of an undersized window is not trusted.
pub fn spectrum_lowest(op: &EdgeOperator, n: usize) -> Result<SpectrumResult, QuantError> {
    let order = op.order();
    if n == 0 || n > order {
        return Err(invalid(format!(
            "requested {n} eigenvalues of an order-{order} operator"
        )));
    }

    let opts = LanczosOptions {
        seed: DIAGNOSTIC_SEED,
        ..LanczosOptions::default()
    };

    let (eigenvalues, truncation_mass, solver_gap, diagnostics_converged) = match op.matrix() {
        EdgeMatrix::Real(m) => {
            let values = dense_symmetric_eigs(m, n)?;
            let probe = lanczos_lowest(&DenseReal(m), n, &opts)?;
            let mass = probe
                .vectors
                .iter()
                .map(|v| edge_mass_real(v))
                .fold(0.0, f64::max);
            let gap = set_distance(&probe.values, &values);
            (values, mass, gap, probe.converged)
        }
        EdgeMatrix::Complex(m) => {
            let values = dense_hermitian_eigs(m, n)?;
            let probe = lanczos_lowest(&RealifiedHermitian(m), n, &opts)?;
            let mass = probe
                .vectors
                .iter()
                .map(|v| edge_mass_realified(v))
                .fold(0.0, f64::max);
            let gap = set_distance(&probe.values, &values);
            (values, mass, gap, probe.converged)
        }
    };

    if !(truncation_mass <= TRUNCATION_LIMIT) {
        return Err(QuantError::ModeTruncation {
            mass: truncation_mass,
            limit: TRUNCATION_LIMIT,
        });
    }

    Ok(SpectrumResult {
        hbar: op.hbar(),
        theta: op.theta(),
        eigenvalues,
        diagnostics: SpectrumDiagnostics {
            truncation_mass,
            hermiticity_residual: op.hermiticity_residual(),
            solver_gap,
            diagnostics_converged,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::quantize_reduced;
    use crate::testutil::{circle_symbol, odd_symbol};
    use std::f64::consts::PI;

    #[test]
    fn circle_spectrum_matches_the_constant_coefficient_closed_form() {
        let rs = circle_symbol(512);
        let hbar = 0.02;
        let theta = 4.0e-3;
        let n_modes = 60;
        let op = quantize_reduced(&rs, hbar, theta, n_modes).unwrap();
        let spectrum = spectrum_lowest(&op, 8).unwrap();

        let c1 = rs.c1_samples[0];
        let lin = rs.lin_samples[0];
        let quad = rs.quad_samples[0];
        let mut predicted: Vec<f64> = (0..op.order())
            .map(|i| {
                let xi = op.frequency(i) - hbar * c1;
                0.5 * rs.mu_pp * xi * xi - hbar * lin + hbar * hbar * quad
            })
            .collect();
        predicted.sort_by(|a, b| a.partial_cmp(b).unwrap());

        for (got, want) in spectrum.eigenvalues.iter().zip(&predicted) {
            assert!(
                (got - want).abs() < 1e-12,
                "eigenvalue {got} vs closed form {want}"
            );
        }
        assert!(spectrum.diagnostics.truncation_mass <= TRUNCATION_LIMIT);
        assert!(spectrum.diagnostics.hermiticity_residual < 1e-13);
    }

    #[test]
    fn spectrum_is_invariant_under_full_lattice_flux_shifts() {
        let rs = circle_symbol(512);
        let hbar = 0.02;
        let theta = 2.0e-3;
        let unit = PI * hbar / rs.s_samples[0].abs();
        let a = spectrum_lowest(&quantize_reduced(&rs, hbar, theta, 48).unwrap(), 6).unwrap();
        let b = spectrum_lowest(
            &quantize_reduced(&rs, hbar, theta + unit, 48).unwrap(),
            6,
        )
        .unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn undersized_windows_are_rejected_by_the_truncation_check() {
        let geom =
            geometry::curve_geometry(&geometry::CurveSpec::Ellipse { p: 1.0, q: 0.6 }, 256)
                .unwrap();
        let grid = band1d::TransverseGrid::with_spacing(16.0, 1e-2).unwrap();
        let rs = effsymbol::reduced_symbol(-0.5, &geom, &grid).unwrap();
        let op = quantize_reduced(&rs, 0.025, 1.0e-3, 6).unwrap();
        match spectrum_lowest(&op, 3) {
            Err(QuantError::ModeTruncation { mass, .. }) => {
                assert!(mass > TRUNCATION_LIMIT);
            }
            other => panic!("expected a truncation error, got {other:?}"),
        }
    }

    #[test]
    fn complex_path_values_match_the_realified_diagnostics() {
        let rs = odd_symbol(512, 2.0);
        let op = quantize_reduced(&rs, 0.05, 2.0e-3, 24).unwrap();
        assert!(!op.is_real());
        let spectrum = spectrum_lowest(&op, 5).unwrap();
        assert!(spectrum.diagnostics.truncation_mass <= TRUNCATION_LIMIT);
        // The realified Lanczos pass sees each eigenvalue twice; the set
        // distance it reports against the dense values must be tiny.
        assert!(
            spectrum.diagnostics.solver_gap < 1e-8,
            "solver gap {:.3e}",
            spectrum.diagnostics.solver_gap
        );
        for pair in spectrum.eigenvalues.windows(2) {
            assert!(pair[0] <= pair[1] + 1e-14);
        }
    }

    #[test]
    fn count_below_counts_computed_values_only() {
        let rs = circle_symbol(512);
        let op = quantize_reduced(&rs, 0.02, 4.0e-3, 48).unwrap();
        let s = spectrum_lowest(&op, 6).unwrap();
        assert_eq!(s.count_below(f64::NEG_INFINITY), 0);
        assert_eq!(s.count_below(f64::INFINITY), 6);
        let mid = 0.5 * (s.eigenvalues[2] + s.eigenvalues[3]);
        assert_eq!(s.count_below(mid), 3);
    }

    #[test]
    fn rejects_out_of_range_requests() {
        let rs = circle_symbol(512);
        let op = quantize_reduced(&rs, 0.02, 0.0, 16).unwrap();
        assert!(spectrum_lowest(&op, 0).is_err());
        assert!(spectrum_lowest(&op, op.order() + 1).is_err());
    }
}
