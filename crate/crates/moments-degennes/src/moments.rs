use crate::error::MomentsError;
use crate::MIN_FIELD_RATIO;
#[cfg(test)]
use crate::MOMENT_QUAD_TARGET;
use band1d::{band_minimum, band_state, step_field, BandMinimum, TransverseGrid};

/// The weighted moments `M₀..M₄` of the transverse ground state at the band
/// minimum: `M_n(a) = ∫ b_a(τ)⁻¹ (b_a(τ)τ − σ(a))ⁿ |φ_a(τ)|² dτ`.
#[derive(Clone, Copy, Debug)]
pub struct MomentSet {
    pub a: f64,
    /// `values[n]` is `M_n(a)`.
    pub values: [f64; 5],
    /// Largest change of any moment under grid halving, divided by 3 (the
    /// Richardson error estimate for the second-order quadrature).
    pub quadrature_error: f64,
}

impl MomentSet {
    pub fn m(&self, n: usize) -> f64 {
        self.values[n]
    }
}

/// Residuals of the closed-form identities tying `M₂, M₃` to boundary data
/// of the ground state, plus the two mixed-weight integral identities.
///
/// For `M₂` and `M₃`, two variants are tracked. The *quoted* forms
/// (`−½β_aM₀` with a σ-weighted boundary term; `⅓(1/a−1)σφφ'`) do **not**
/// vanish — their sign structure is inconsistent with the half-line
/// integration identities the moments actually satisfy — and their measured
/// residuals are part of the deliverable rather than being silently
/// replaced. The *corrected* forms (`+½β_aM₀ + ¼(1/a−1)φφ'`;
/// `⅓(1−1/a)σφφ'`) vanish to quadrature accuracy and act as the control
/// pair. All residuals are oriented `left-hand side − right-hand side` with
/// the moment on the left.
#[derive(Clone, Copy, Debug)]
pub struct MomentIdentityReport {
    pub a: f64,
    /// `M₂ − [−½β_aM₀ + ¼(1/a−1)σ(a)φ(0)φ'(0)]`.
    pub m2_quoted: f64,
    /// `M₂ − [+½β_aM₀ + ¼(1/a−1)φ(0)φ'(0)]`; vanishes.
    pub m2_corrected: f64,
    /// `M₃ − ⅓(1/a−1)σ(a)φ(0)φ'(0)`; equals `2M₃` identically because the
    /// prefactor's sign is flipped relative to the vanishing form.
    pub m3_quoted: f64,
    /// `M₃ − ⅓(1−1/a)σ(a)φ(0)φ'(0)`; vanishes.
    pub m3_corrected: f64,
    /// `∫τ(σ−b_aτ)²|φ|²dτ − (M₃ + σM₂)`; vanishes.
    pub cubic_identity: f64,
    /// `∫b_aτ²(σ−b_aτ)|φ|²dτ − (−M₃ − 2σM₂)`; vanishes.
    pub quadratic_identity: f64,
    /// Ground-state boundary samples feeding the identities.
    pub phi0: f64,
    pub phi0_prime: f64,
    /// The moments used.
    pub moments: MomentSet,
}

/// Trapezoid quadrature of the five weighted moments on one grid, split at
/// the weight discontinuity: nodes with `t < 0` carry weight `1/a`, nodes
/// with `t > 0` weight `1`, and the node at `t = 0` the half-sum of both
/// one-sided limits (the rest of the integrand is continuous there).
fn moment_integrals(a: f64, sigma: f64, grid: &TransverseGrid, state: &[f64]) -> [f64; 5] {
    let delta = grid.spacing();
    let mut acc = [0.0_f64; 5];
    for (i, &u) in state.iter().enumerate() {
        let t = grid.node(i);
        let weight = if t == 0.0 {
            0.5 * (1.0 + 1.0 / a)
        } else if t < 0.0 {
            1.0 / a
        } else {
            1.0
        };
        let centered = step_field(a, t) * t - sigma;
        let density = weight * u * u;
        let mut power = 1.0;
        for slot in &mut acc {
            *slot += density * power;
            power *= centered;
        }
    }
    acc.map(|v| v * delta)
}

/// The two mixed-weight integrals appearing in the cubic and quadratic
/// identities, on one grid (no `1/b_a` weight; the integrands are
/// continuous, so a plain trapezoid applies — end samples are zero).
fn mixed_integrals(a: f64, sigma: f64, grid: &TransverseGrid, state: &[f64]) -> (f64, f64) {
    let delta = grid.spacing();
    let mut cubic = 0.0;
    let mut quadratic = 0.0;
    for (i, &u) in state.iter().enumerate() {
        let t = grid.node(i);
        let b = step_field(a, t);
        let w = sigma - b * t;
        cubic += t * w * w * u * u;
        quadratic += b * t * t * w * u * u;
    }
    (cubic * delta, quadratic * delta)
}

/// Ground-state value and derivative at `t = 0` from one grid's samples:
/// the derivative is the average of the two one-sided second-order
/// differences (the state is C¹ but the scheme's truncation error differs
/// per side, and averaging cancels the leading term of the jump).
fn boundary_samples(grid: &TransverseGrid, state: &[f64]) -> (f64, f64) {
    let c = (grid.len() - 1) / 2;
    let delta = grid.spacing();
    let right = (-3.0 * state[c] + 4.0 * state[c + 1] - state[c + 2]) / (2.0 * delta);
    let left = (3.0 * state[c] - 4.0 * state[c - 1] + state[c - 2]) / (2.0 * delta);
    (state[c], 0.5 * (right + left))
}

fn check_ratio(a: f64) -> Result<(), MomentsError> {
    if !a.is_finite() || a.abs() < MIN_FIELD_RATIO {
        return Err(MomentsError::invalid(format!(
            "field ratio a = {a} makes the 1/b_a weight singular"
        )));
    }
    Ok(())
}

/// Weighted moments `M₀..M₄` at the band minimum, Richardson-combined over
/// the grid and its refinement, with the grid-halving spread as the
/// quadrature error estimate.
pub fn moments(
    a: f64,
    minimum: &BandMinimum,
    grid: &TransverseGrid,
) -> Result<MomentSet, MomentsError> {
    check_ratio(a)?;
    let sigma = minimum.sigma_a;
    let fine = grid.refined();
    let coarse_state = band_state(a, sigma, 1, grid)?;
    let fine_state = band_state(a, sigma, 1, &fine)?;
    let coarse = moment_integrals(a, sigma, grid, &coarse_state);
    let fine_vals = moment_integrals(a, sigma, &fine, &fine_state);
    let mut values = [0.0; 5];
    let mut err = 0.0_f64;
    for n in 0..5 {
        values[n] = (4.0 * fine_vals[n] - coarse[n]) / 3.0;
        err = err.max(((fine_vals[n] - coarse[n]) / 3.0).abs());
    }
    Ok(MomentSet {
        a,
        values,
        quadrature_error: err,
    })
}

/// Evaluate all six identity residuals at the band minimum for `a`,
/// locating the minimum on `grid` (derivative tolerance 1e−9).
pub fn check_moment_identities(
    a: f64,
    grid: &TransverseGrid,
) -> Result<MomentIdentityReport, MomentsError> {
    check_ratio(a)?;
    let minimum = band_minimum(a, grid, 1e-9)?;
    let set = moments(a, &minimum, grid)?;
    let sigma = minimum.sigma_a;
    let beta = minimum.beta_a;

    let fine = grid.refined();
    let coarse_state = band_state(a, sigma, 1, grid)?;
    let fine_state = band_state(a, sigma, 1, &fine)?;

    let richardson = |c: f64, f: f64| (4.0 * f - c) / 3.0;

    let (phi0_c, dphi_c) = boundary_samples(grid, &coarse_state);
    let (phi0_f, dphi_f) = boundary_samples(&fine, &fine_state);
    let phi0 = richardson(phi0_c, phi0_f);
    let phi0_prime = richardson(dphi_c, dphi_f);

    let (cubic_c, quad_c) = mixed_integrals(a, sigma, grid, &coarse_state);
    let (cubic_f, quad_f) = mixed_integrals(a, sigma, &fine, &fine_state);
    let cubic = richardson(cubic_c, cubic_f);
    let quadratic = richardson(quad_c, quad_f);

    let boundary = phi0 * phi0_prime;
    let ratio_minus = 1.0 / a - 1.0;
    let m0 = set.m(0);
    let m2 = set.m(2);
    let m3 = set.m(3);

    Ok(MomentIdentityReport {
        a,
        m2_quoted: m2 - (-0.5 * beta * m0 + 0.25 * ratio_minus * sigma * boundary),
        m2_corrected: m2 - (0.5 * beta * m0 + 0.25 * ratio_minus * boundary),
        m3_quoted: m3 - (ratio_minus * sigma * boundary) / 3.0,
        m3_corrected: m3 - (-ratio_minus * sigma * boundary) / 3.0,
        cubic_identity: cubic - (m3 + sigma * m2),
        quadratic_identity: quadratic - (-m3 - 2.0 * sigma * m2),
        phi0,
        phi0_prime,
        moments: set,
    })
}
