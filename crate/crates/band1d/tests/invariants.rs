//! Cross-cutting invariants of the transverse band family: spectral
//! ordering and the second-band barrier on a σ-probe grid, the asymptotic
//! limits of the first band, the even-symmetry reduction of the symmetric
//! case to a half-line Neumann problem, and Sturm oscillation counts.

use band1d::{band_state, band_value, band_value_auto, sign_changes, TransverseGrid};
use eigcore::{tridiag_lowest, TridiagonalOperator};
use proptest::prelude::*;

fn probe_base_grid() -> TransverseGrid {
    TransverseGrid::with_spacing(12.0, 1.0 / 100.0).unwrap()
}

/// 50 probe values of σ spanning the window that matters for level sets,
/// [−2, 3]. (Far right of this window the two potential wells decouple and
/// inter-well gaps close exponentially, so a fixed gap floor is only
/// meaningful on a bounded window.)
fn probe_sigmas() -> Vec<f64> {
    (0..50).map(|i| -2.0 + 5.0 * i as f64 / 49.0).collect()
}

#[test]
fn probe_grid_simplicity_and_second_band_barrier() {
    for &a in &[-1.0, -0.5, -0.25] {
        let base = probe_base_grid();
        for sigma in probe_sigmas() {
            let (p2, used) = band_value_auto(a, sigma, 2, &base).unwrap();
            let p1 = band_value(a, sigma, 1, &used).unwrap();
            assert!(
                p2.mu - p1.mu > 1e-6,
                "a={a}, σ={sigma}: μ2−μ1 = {}",
                p2.mu - p1.mu
            );
            assert!(
                p2.mu > a.abs() + 1e-6,
                "a={a}, σ={sigma}: μ2 = {} vs |a| = {}",
                p2.mu,
                a.abs()
            );
        }
    }
}

#[test]
fn first_band_limits() {
    // Left tail: the potential floor at σ = −5 is σ² on the half of the
    // line carrying unit field, forcing the band far above 3.
    for &a in &[-1.0, -0.5, -0.25] {
        let (p, _) = band_value_auto(a, -5.0, 1, &probe_base_grid()).unwrap();
        assert!(p.mu > 3.0, "a={a}: μ(−5) = {}", p.mu);
    }
    // Right tail: μ_a(σ) → |a| from below as σ → +∞; at σ = 25 the gap to
    // the limit is below 1e−2. The ground state then sits in the well at
    // t = σ/a, so each `a` gets a box wide enough to hold it.
    for &(a, t_half, spacing) in &[
        (-1.0_f64, 40.0_f64, 1.0 / 100.0),
        (-0.5, 72.0, 1.0 / 80.0),
        (-0.25, 120.0, 1.0 / 50.0),
    ] {
        let grid = TransverseGrid::with_spacing(t_half, spacing).unwrap();
        let (p, _) = band_value_auto(a, 25.0, 1, &grid).unwrap();
        assert!(
            (p.mu - a.abs()).abs() < 1e-2,
            "a={a}: μ(25) = {} vs {}",
            p.mu,
            a.abs()
        );
    }
}

/// Symmetrized ghost-node Neumann discretization of −u″ + (σ−t)²u on
/// [0, t_max] (Dirichlet at t_max), Richardson-combined over two spacings.
/// The first row's Neumann closure (2u₀ − 2u₁)/δ² is made symmetric by the
/// diagonal similarity u₀ → u₀/√2, giving off-diagonal −√2/δ²; eigenvalues
/// are unchanged.
fn half_line_neumann_value(sigma: f64, t_max: f64, spacing: f64) -> f64 {
    let value = |delta: f64| -> f64 {
        let m = (t_max / delta).round() as usize;
        let inv2 = 1.0 / (delta * delta);
        let diag: Vec<f64> = (0..m)
            .map(|i| {
                let w = sigma - i as f64 * delta;
                2.0 * inv2 + w * w
            })
            .collect();
        let mut off = vec![-inv2; m - 1];
        off[0] = -std::f64::consts::SQRT_2 * inv2;
        let op = TridiagonalOperator::new(diag, off, delta).unwrap();
        tridiag_lowest(&op, 1).unwrap()[0]
    };
    let coarse = value(spacing);
    let fine = value(0.5 * spacing);
    (4.0 * fine - coarse) / 3.0
}

#[test]
fn symmetric_case_reduces_to_half_line_neumann() {
    let grid = TransverseGrid::with_spacing(16.0, 1.0 / 200.0).unwrap();
    for &sigma in &[0.3, 0.768_183_653_2, 1.5] {
        let p = band_value(-1.0, sigma, 1, &grid).unwrap();
        let half = half_line_neumann_value(sigma, 16.0, 1.0 / 200.0);
        assert!(
            (p.mu - half).abs() < 1e-7,
            "σ={sigma}: full line {} vs half line {}",
            p.mu,
            half
        );
    }
}

#[test]
fn symmetric_case_ground_state_is_even() {
    let grid = TransverseGrid::with_spacing(16.0, 1.0 / 200.0).unwrap();
    for &sigma in &[0.3, 0.768_183_653_2, 1.5] {
        let p = band_value(-1.0, sigma, 1, &grid).unwrap();
        let u = p.groundstate.unwrap();
        let amp = u.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
        let n = u.len();
        let worst = (0..n)
            .map(|i| (u[i] - u[n - 1 - i]).abs())
            .fold(0.0_f64, f64::max);
        assert!(
            worst <= 1e-8 * amp,
            "σ={sigma}: asymmetry {worst:.3e} vs amplitude {amp:.3e}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    /// Sturm oscillation: the n-th transverse eigenvector changes sign
    /// exactly n−1 times, for n up to 4.
    #[test]
    fn oscillation_counts(a in -1.0..-0.3f64, sigma in -1.0..2.5f64) {
        let grid = TransverseGrid::with_spacing(16.0, 1.0 / 200.0).unwrap();
        for level in 1..=4usize {
            let state = band_state(a, sigma, level, &grid).unwrap();
            prop_assert_eq!(sign_changes(&state), level - 1);
        }
    }
}
