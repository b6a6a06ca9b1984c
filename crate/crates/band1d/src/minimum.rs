use crate::band::{band_value, band_value_auto};
use crate::error::Band1dError;
use crate::grid::TransverseGrid;
use crate::params::step_field;
use eigcore::tridiag_lowest;

/// The interior minimum of the first band: location, depth, curvature.
#[derive(Clone, Copy, Debug)]
pub struct BandMinimum {
    pub a: f64,
    /// Argmin σ(a).
    pub sigma_a: f64,
    /// Minimum value β_a = μ_a(σ(a)).
    pub beta_a: f64,
    /// Curvature μ''_a(σ(a)): a centered 5-point first-derivative stencil
    /// (step 1e−3) applied to the parametric-identity values of μ'. Taking
    /// one derivative of μ' instead of two of μ keeps eigenvalue round-off
    /// (~1e−10 per point) from being amplified by 1/step² into the result.
    pub mu_pp: f64,
    /// Achieved |μ'_a(σ_a)| at exit.
    pub tol: f64,
    /// Disagreement between `mu_pp` and the literal 5-point second
    /// difference of μ itself; an upper bound on the curvature uncertainty.
    pub mu_pp_err: f64,
}

/// First derivative of the band via the parametric eigenvalue identity
/// μ'(σ) = 2⟨(σ − b_a t) u, u⟩ (exact for the discrete operator), evaluated
/// on the grid and its refinement and Richardson-combined.
pub fn mu_derivative(a: f64, sigma: f64, grid: &TransverseGrid) -> Result<f64, Band1dError> {
    let eval = |g: &TransverseGrid| -> Result<f64, Band1dError> {
        let state = crate::band::band_state(a, sigma, 1, g)?;
        let delta = g.spacing();
        let mut acc = 0.0;
        for (i, &u) in state.iter().enumerate() {
            let t = g.node(i);
            acc += (sigma - step_field(a, t) * t) * u * u;
        }
        Ok(2.0 * acc * delta)
    };
    let coarse = eval(grid)?;
    let fine = eval(&grid.refined())?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Raw single-grid band value without boundary diagnostics; used for cheap
/// bracketing scans where Dirichlet inflation at far-away σ is harmless.
fn scan_value(a: f64, sigma: f64, grid: &TransverseGrid) -> Result<f64, Band1dError> {
    let op = crate::band::assemble_transverse(a, sigma, grid)?;
    Ok(tridiag_lowest(&op, 1)?[0])
}

/// Locate the interior band minimum for `a ∈ [−1, 0)`: coarse scan over
/// σ ∈ [−5, 20], golden-section shrink, then Newton refinement on the
/// derivative until `|μ'| ≤ tol`.
pub fn band_minimum(
    a: f64,
    grid: &TransverseGrid,
    tol: f64,
) -> Result<BandMinimum, Band1dError> {
    if !(-1.0..0.0).contains(&a) {
        return Err(Band1dError::invalid(format!(
            "band minimum defined for a ∈ [−1, 0), got {a}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Band1dError::invalid("tolerance must be positive"));
    }

    // Coarse bracketing scan. Single-grid values suffice: near the minimum
    // the state is well inside the box, and far away Dirichlet inflation
    // only pushes values up, never creating a spurious interior argmin.
    let scan_lo = -5.0;
    let scan_step = 0.5;
    let scan_n = 51;
    let mut best = (0usize, f64::INFINITY);
    let mut values = Vec::with_capacity(scan_n);
    for i in 0..scan_n {
        let sigma = scan_lo + scan_step * i as f64;
        let v = scan_value(a, sigma, grid)?;
        if v < best.1 {
            best = (i, v);
        }
        values.push(v);
    }
    if best.0 == 0 || best.0 == scan_n - 1 {
        return Err(Band1dError::NoMinimum(format!(
            "scan argmin at the window edge (σ = {})",
            scan_lo + scan_step * best.0 as f64
        )));
    }
    let mut lo = scan_lo + scan_step * (best.0 - 1) as f64;
    let mut hi = scan_lo + scan_step * (best.0 + 1) as f64;

    // Golden-section shrink to ~1e−3 before switching to derivatives.
    let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
    let mut x1 = lo + phi * (hi - lo);
    let mut x2 = hi - phi * (hi - lo);
    let mut f1 = scan_value(a, x1, grid)?;
    let mut f2 = scan_value(a, x2, grid)?;
    while hi - lo > 1e-3 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + phi * (hi - lo);
            f1 = scan_value(a, x1, grid)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - phi * (hi - lo);
            f2 = scan_value(a, x2, grid)?;
        }
    }

    // Newton on g(σ) = μ'(σ), derivative of g by central difference. The
    // bracket from the golden phase guards each step.
    let mut sigma = 0.5 * (lo + hi);
    let mut g = mu_derivative(a, sigma, grid)?;
    let mut iterations = 0;
    while g.abs() > tol && iterations < 16 {
        let step = 1e-4;
        let gp = mu_derivative(a, sigma + step, grid)?;
        let gm = mu_derivative(a, sigma - step, grid)?;
        let dg = (gp - gm) / (2.0 * step);
        let mut next = sigma - g / dg;
        if !(dg > 0.0 && next > lo && next < hi) {
            // Fall back to bisection on the sign of the derivative.
            next = if g > 0.0 {
                0.5 * (lo + sigma)
            } else {
                0.5 * (sigma + hi)
            };
        }
        if g > 0.0 {
            hi = sigma;
        } else {
            lo = sigma;
        }
        sigma = next;
        g = mu_derivative(a, sigma, grid)?;
        iterations += 1;
    }
    if g.abs() > tol {
        return Err(Band1dError::NoMinimum(format!(
            "derivative stalled at |μ'| = {:.3e} (target {tol:.3e})",
            g.abs()
        )));
    }

    let (point, used_grid) = band_value_auto(a, sigma, 1, grid)?;
    let beta_a = point.mu;

    // Curvature: differentiate the exact-identity first derivative once
    // (5-point stencil, step 1e−3). The noise floor of each μ' sample is
    // ~1e−10, and a first difference amplifies it by only Σ|coef|/(12s)
    // ≈ 1.5e3, so the curvature is good to ~1e−7. A second difference of μ
    // itself would amplify the same floor by 1/s² ≈ 1e6 and lose three
    // digits; that literal stencil is still evaluated and its disagreement
    // reported as the uncertainty estimate.
    let s = 1e-3;
    let g_p1 = mu_derivative(a, sigma + s, &used_grid)?;
    let g_m1 = mu_derivative(a, sigma - s, &used_grid)?;
    let g_p2 = mu_derivative(a, sigma + 2.0 * s, &used_grid)?;
    let g_m2 = mu_derivative(a, sigma - 2.0 * s, &used_grid)?;
    let mu_pp = (8.0 * (g_p1 - g_m1) - (g_p2 - g_m2)) / (12.0 * s);

    let mut mu_at = [0.0_f64; 5];
    for (idx, offset) in (-2i32..=2).enumerate() {
        mu_at[idx] = if offset == 0 {
            beta_a
        } else {
            band_value(a, sigma + offset as f64 * s, 1, &used_grid)?.mu
        };
    }
    let mu_pp_second_difference =
        (-mu_at[0] + 16.0 * mu_at[1] - 30.0 * mu_at[2] + 16.0 * mu_at[3] - mu_at[4])
            / (12.0 * s * s);
    let mu_pp_err = (mu_pp - mu_pp_second_difference).abs();

    if !(beta_a > 0.0 && beta_a < a.abs() && sigma > 0.0 && mu_pp > 0.0) {
        return Err(Band1dError::NoMinimum(format!(
            "computed minimum violates its defining bounds: σ = {sigma}, β = {beta_a}, μ'' = {mu_pp}"
        )));
    }
    Ok(BandMinimum {
        a,
        sigma_a: sigma,
        beta_a,
        mu_pp,
        tol: g.abs(),
        mu_pp_err,
    })
}

/// Solve μ_a(σ) = E on both sides of the minimum; the band is strictly
/// monotone on each side, so each root is a plain bisection to 1e−10 in σ.
pub fn band_level_set(
    a: f64,
    e: f64,
    minimum: &BandMinimum,
    grid: &TransverseGrid,
) -> Result<(f64, f64), Band1dError> {
    if !(e > minimum.beta_a && e < a.abs()) {
        return Err(Band1dError::invalid(format!(
            "E = {e} outside the band range ({}, {})",
            minimum.beta_a,
            a.abs()
        )));
    }
    let mu = |sigma: f64, g: &TransverseGrid| -> Result<(f64, TransverseGrid), Band1dError> {
        let (p, used) = band_value_auto(a, sigma, 1, g)?;
        Ok((p.mu, used))
    };
    let mut g = *grid;

    let bisect = |mut inside: f64,
                  mut outside: f64,
                  g: &mut TransverseGrid|
     -> Result<f64, Band1dError> {
        // `inside` has μ < E, `outside` has μ > E.
        while (outside - inside).abs() > 1e-10 {
            let mid = 0.5 * (inside + outside);
            let (v, used) = mu(mid, g)?;
            *g = used;
            if v < e {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(0.5 * (inside + outside))
    };

    // Left root: μ grows without bound as σ → −∞.
    let mut left = minimum.sigma_a - 0.5;
    let mut step = 0.5;
    loop {
        let (v, used) = mu(left, &g)?;
        g = used;
        if v > e {
            break;
        }
        step *= 2.0;
        left -= step;
        if left < minimum.sigma_a - 70.0 {
            return Err(Band1dError::NoMinimum(
                "left level-set bracket not found".into(),
            ));
        }
    }
    let sigma_minus = bisect(minimum.sigma_a, left, &mut g)?;

    // Right root: μ climbs to |a| from below, so E < |a| guarantees a
    // bracket at finite σ (the search gives up past σ_a + 70 in case E is
    // pathologically close to |a| for the grid to resolve).
    let mut right = minimum.sigma_a + 0.5;
    step = 0.5;
    loop {
        let (v, used) = mu(right, &g)?;
        g = used;
        if v > e {
            break;
        }
        step *= 2.0;
        right += step;
        if right > minimum.sigma_a + 70.0 {
            return Err(Band1dError::invalid(format!(
                "E = {e} too close to the asymptotic value {} to bracket",
                a.abs()
            )));
        }
    }
    let sigma_plus = bisect(minimum.sigma_a, right, &mut g)?;
    Ok((sigma_minus, sigma_plus))
}
