use crate::error::MomentsError;
use eigcore::{tridiag_eigvec, tridiag_lowest, TridiagonalOperator};

/// Converged half-line Neumann ground-state data: the minimal band energy
/// `Θ₀`, its square root `ξ₀`, the normalized ground state `f₀` sampled on
/// the fine grid (node 0 included, Dirichlet end last), and the half-line
/// moments `M_k = ∫₀^∞ (ξ₀−t)^k |f₀|² dt`.
#[derive(Clone, Debug)]
pub struct DeGennesData {
    pub theta0: f64,
    /// `√Θ₀` by definition; coincides with the argmin σ to 1e−6 (checked).
    pub xi0: f64,
    /// Fine-grid samples of the positive normalized ground state at σ = ξ₀.
    pub f0: Vec<f64>,
    pub halfmoments: [f64; 5],
    /// Spacing of the grid carrying `f0`.
    pub spacing: f64,
    /// Truncation length (Dirichlet wall).
    pub t_max: f64,
    /// Coarse-grid samples (double spacing), kept for quadrature error
    /// control in downstream constants.
    pub(crate) f0_coarse: Vec<f64>,
}

/// Symmetrized ghost-node Neumann discretization of `−d²/dt² + (σ−t)²` on
/// `[0, t_max]` with Dirichlet truncation at `t_max`: `nodes` grid points
/// including both ends, unknowns at nodes `0..nodes−1`. The Neumann closure
/// `(2u₀ − 2u₁)/δ²` at node 0 is made symmetric by the diagonal similarity
/// `u₀ → u₀/√2`, which leaves eigenvalues intact and scales the first
/// eigenvector entry by `1/√2`.
fn assemble_half_line(sigma: f64, nodes: usize, t_max: f64) -> TridiagonalOperator {
    let m = nodes - 1;
    let delta = t_max / m as f64;
    let inv2 = 1.0 / (delta * delta);
    let diag: Vec<f64> = (0..m)
        .map(|i| {
            let w = sigma - i as f64 * delta;
            2.0 * inv2 + w * w
        })
        .collect();
    let mut off = vec![-inv2; m - 1];
    off[0] = -std::f64::consts::SQRT_2 * inv2;
    TridiagonalOperator::new(diag, off, delta).expect("half-line operator shape")
}

/// Ground state on one grid: back-transformed (node 0 rescaled by √2),
/// extended by the Dirichlet zero, normalized in the trapezoid L² norm
/// (which the symmetrized eigenvector norm already equals), positive.
fn ground_state(sigma: f64, nodes: usize, t_max: f64) -> Result<(Vec<f64>, f64), MomentsError> {
    let op = assemble_half_line(sigma, nodes, t_max);
    let delta = t_max / (nodes - 1) as f64;
    let value = tridiag_lowest(&op, 1)?[0];
    let mut v = tridiag_eigvec(&op, value)?;
    v[0] *= std::f64::consts::SQRT_2;
    v.push(0.0);
    if v[0] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok((v, delta))
}

fn lowest_value(sigma: f64, nodes: usize, t_max: f64) -> Result<f64, MomentsError> {
    let op = assemble_half_line(sigma, nodes, t_max);
    Ok(tridiag_lowest(&op, 1)?[0])
}

/// Richardson-combined ground energy over the grid pair.
fn band_value(sigma: f64, nodes: usize, t_max: f64) -> Result<f64, MomentsError> {
    let coarse = lowest_value(sigma, nodes, t_max)?;
    let fine = lowest_value(sigma, 2 * nodes - 1, t_max)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Feynman–Hellmann derivative `μ'(σ) = 2∫₀^∞ (σ−t)|f_σ|² dt`,
/// Richardson-combined over the grid pair (trapezoid with the half-weight
/// end at 0 built into the normalization).
fn band_derivative(sigma: f64, nodes: usize, t_max: f64) -> Result<f64, MomentsError> {
    let eval = |n: usize| -> Result<f64, MomentsError> {
        let (f, delta) = ground_state(sigma, n, t_max)?;
        let mut acc = 0.5 * sigma * f[0] * f[0];
        for (i, &x) in f.iter().enumerate().skip(1) {
            acc += (sigma - i as f64 * delta) * x * x;
        }
        Ok(2.0 * acc * delta)
    };
    let coarse = eval(nodes)?;
    let fine = eval(2 * nodes - 1)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Trapezoid half-line moments `∫ (xi0−t)^k |f|² dt` on one grid.
fn half_moments(xi0: f64, f: &[f64], delta: f64) -> [f64; 5] {
    let mut acc = [0.0_f64; 5];
    for (i, &x) in f.iter().enumerate() {
        let weight = if i == 0 { 0.5 } else { 1.0 };
        let centered = xi0 - i as f64 * delta;
        let mut power = 1.0;
        let density = weight * x * x;
        for slot in &mut acc {
            *slot += density * power;
            power *= centered;
        }
    }
    acc.map(|v| v * delta)
}

/// Solve the half-line Neumann model: minimize the ground energy over σ
/// (golden-section bracket, then Newton on the Feynman–Hellmann derivative
/// to |μ'| ≤ 1e−10), take `Θ₀` as the minimal value, `ξ₀ = √Θ₀`, and
/// evaluate the ground state and its moments at σ = ξ₀.
///
/// `grid_n` is the coarse node count including both ends (the returned
/// state lives on the doubled grid); `t_max` the Dirichlet wall.
pub fn degennes(grid_n: usize, t_max: f64) -> Result<DeGennesData, MomentsError> {
    if grid_n < 33 {
        return Err(MomentsError::invalid("need at least 33 grid nodes"));
    }
    if !(t_max.is_finite() && t_max >= 8.0) {
        return Err(MomentsError::invalid(
            "truncation wall below 8 cannot hold the ground state",
        ));
    }

    // Bracket the minimum: it lies well inside (0.2, 1.6).
    let mut lo = 0.2;
    let mut hi = 1.6;
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    let mut x1 = lo + phi * (hi - lo);
    let mut x2 = hi - phi * (hi - lo);
    let mut f1 = lowest_value(x1, grid_n, t_max)?;
    let mut f2 = lowest_value(x2, grid_n, t_max)?;
    while hi - lo > 1e-3 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + phi * (hi - lo);
            f1 = lowest_value(x1, grid_n, t_max)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - phi * (hi - lo);
            f2 = lowest_value(x2, grid_n, t_max)?;
        }
    }

    let mut sigma = 0.5 * (lo + hi);
    let mut g = band_derivative(sigma, grid_n, t_max)?;
    let mut iterations = 0;
    while g.abs() > 1e-10 && iterations < 16 {
        let step = 1e-4;
        let dg = (band_derivative(sigma + step, grid_n, t_max)?
            - band_derivative(sigma - step, grid_n, t_max)?)
            / (2.0 * step);
        let next = sigma - g / dg;
        if !(dg > 0.0 && next > lo && next < hi) {
            return Err(MomentsError::NoMinimum(format!(
                "derivative refinement left the bracket at σ = {next}"
            )));
        }
        sigma = next;
        g = band_derivative(sigma, grid_n, t_max)?;
        iterations += 1;
    }
    if g.abs() > 1e-10 {
        return Err(MomentsError::NoMinimum(format!(
            "derivative stalled at |μ'| = {:.3e}",
            g.abs()
        )));
    }

    let theta0 = band_value(sigma, grid_n, t_max)?;
    let xi0 = theta0.sqrt();
    // The model's defining identity: the argmin coincides with √Θ₀.
    if (sigma - xi0).abs() > 1e-6 {
        return Err(MomentsError::NoMinimum(format!(
            "argmin σ = {sigma} does not match √Θ₀ = {xi0}"
        )));
    }

    let (f0_coarse, delta_c) = ground_state(xi0, grid_n, t_max)?;
    let (f0, delta_f) = ground_state(xi0, 2 * grid_n - 1, t_max)?;

    // Truncation audit: minimum of |f| over the outer 32 nodes (noise in
    // the eigenvector alternates in sign; a real tail is monotone).
    let window = 32.min(f0.len() / 4);
    let tail = f0[f0.len() - 1 - window..f0.len() - 1]
        .iter()
        .fold(f64::INFINITY, |m, &x| m.min(x.abs()));
    if tail > 1e-12 {
        return Err(MomentsError::invalid(format!(
            "ground state has not decayed at the wall (|f| ≥ {tail:.3e}); enlarge t_max"
        )));
    }

    let coarse = half_moments(xi0, &f0_coarse, delta_c);
    let fine = half_moments(xi0, &f0, delta_f);
    let mut halfmoments = [0.0; 5];
    for k in 0..5 {
        halfmoments[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
    }

    Ok(DeGennesData {
        theta0,
        xi0,
        f0,
        halfmoments,
        spacing: delta_f,
        t_max,
        f0_coarse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solved() -> DeGennesData {
        degennes(1601, 16.0).unwrap()
    }

    #[test]
    fn ground_energy_and_its_root() {
        let dg = solved();
        assert!((dg.theta0 - 0.590_106_125_0).abs() < 1e-7, "{}", dg.theta0);
        assert!((dg.xi0 - 0.768_183_653_2).abs() < 1e-7, "{}", dg.xi0);
        assert!((dg.xi0 * dg.xi0 - dg.theta0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_shape() {
        let dg = solved();
        assert!(dg.f0[0] > 0.0);
        // No sign change anywhere above the noise floor.
        let max = dg.f0.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
        assert!(dg.f0.iter().all(|&x| x > -1e-10 * max));
        // Boundary value matches the frozen square −6M₃ = f₀(0)².
        assert!(
            (dg.f0[0] * dg.f0[0] - 0.762_204_3).abs() < 1e-5,
            "{}",
            dg.f0[0] * dg.f0[0]
        );
    }

    #[test]
    fn half_line_moment_identities() {
        let dg = solved();
        let [m0, m1, m2, m3, m4] = dg.halfmoments;
        assert!((m0 - 1.0).abs() < 1e-9, "M0 = {m0}");
        assert!(m1.abs() < 1e-7, "M1 = {m1}");
        assert!((m2 - dg.theta0 / 2.0).abs() < 1e-6, "M2 = {m2}");
        assert!(
            (m3 + dg.f0[0] * dg.f0[0] / 6.0).abs() < 1e-6,
            "M3 = {m3} vs −f₀(0)²/6"
        );
        let m4_identity = 0.375 * (1.0 + dg.theta0 * dg.theta0 + 6.0 * dg.xi0 * m3);
        assert!((m4 - m4_identity).abs() < 1e-6, "M4 = {m4} vs {m4_identity}");
    }

    #[test]
    fn frozen_half_line_moments() {
        // The fourth moment carries the largest trapezoid coefficient, so
        // its tolerance at this resolution is wider; the constants tests
        // re-pin it through the closed forms at production resolution.
        let dg = solved();
        assert!((dg.halfmoments[2] - 0.295_053_062_5).abs() < 1e-6);
        assert!((dg.halfmoments[3] + 0.127_034_050_8).abs() < 1e-6);
        assert!((dg.halfmoments[4] - 0.286_014_310_9).abs() < 5e-6);
    }

    #[test]
    fn boundary_mass_combination_frozen_value() {
        // 3·(−2M₃) = f₀(0)²·? — the measured value of this combination is
        // 0.7622, pinned here so downstream range checks report honestly.
        let dg = solved();
        let combo = 3.0 * (-2.0 * dg.halfmoments[3]);
        assert!((combo - 0.762_204_3).abs() < 1e-5, "{combo}");
    }

    #[test]
    fn rejects_undersized_domains() {
        assert!(degennes(1601, 6.0).is_err());
        assert!(degennes(16, 16.0).is_err());
    }
}
