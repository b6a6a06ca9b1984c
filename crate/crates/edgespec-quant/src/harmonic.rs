//! Harmonic-ladder predictions at a nondegenerate curvature maximum.
//!
//! When the linear coupling attracts (`C > 0`) and the curvature maximum is
//! nondegenerate (`k''(s*) < 0`), the reduced operator localizes at `s*`
//! and its low spectrum approaches the ladder of the local oscillator
//!
//! `λ_n(ħ) ≈ −C·k_max·ħ + (n − ½)·ħ^{3/2}·ω`,  `ω = √(C·μ''·|k''|)`,
//!
//! obtained by expanding the well to second order: quadratic kinetic
//! coefficient `μ''/2` against the well curvature `C·|k''|/2` gives the
//! oscillator constant `2·√(A·B)` per level with `A = (μ''/2)ħ²` and
//! `B = C|k''|ħ/2`. The same ladder expressed for the full two-dimensional
//! problem (eigenvalues of order `h = ħ²`) reads
//!
//! `λ_n(h) ≈ β_a·h − C·k_max·h^{3/2} + (n − ½)·h^{7/4}·ω`.

use band1d::BandMinimum;
use geometry::CurvatureMax;

use crate::error::{invalid, QuantError};

/// Validated ingredients of the ladder at one curvature maximum.
#[derive(Clone, Copy, Debug)]
pub struct HarmonicModel {
    /// Band minimum value β_a.
    pub beta_a: f64,
    /// Band curvature μ''(σ(a)) > 0.
    pub mu_pp: f64,
    /// Linear coupling constant C > 0.
    pub coupling: f64,
    /// Curvature maximum value.
    pub k_max: f64,
    /// Second derivative of curvature at the maximum, < 0.
    pub k_pp: f64,
    /// Oscillator frequency √(C·μ''·|k''|).
    pub omega: f64,
}

/// Build the ladder model, checking the localization hypotheses.
pub fn harmonic_model(
    minimum: &BandMinimum,
    cmax: &CurvatureMax,
    coupling: f64,
) -> Result<HarmonicModel, QuantError> {
    if !(coupling.is_finite() && coupling > 0.0) {
        return Err(invalid(
            "the harmonic ladder needs an attracting linear coupling C > 0",
        ));
    }
    if !(minimum.mu_pp.is_finite() && minimum.mu_pp > 0.0) {
        return Err(invalid("band curvature μ'' must be positive"));
    }
    if !(cmax.k_pp.is_finite() && cmax.k_pp < 0.0) {
        return Err(invalid(
            "the harmonic ladder needs a nondegenerate curvature maximum (k'' < 0)",
        ));
    }
    if !cmax.k_max.is_finite() {
        return Err(invalid("non-finite curvature maximum"));
    }
    let omega = (coupling * minimum.mu_pp * (-cmax.k_pp)).sqrt();
    Ok(HarmonicModel {
        beta_a: minimum.beta_a,
        mu_pp: minimum.mu_pp,
        coupling,
        k_max: cmax.k_max,
        k_pp: cmax.k_pp,
        omega,
    })
}

impl HarmonicModel {
    /// Ladder spacing `ħ^{3/2}·ω` of the reduced operator.
    pub fn reduced_gap(&self, hbar: f64) -> f64 {
        hbar.powf(1.5) * self.omega
    }

    /// First `count` ladder levels of the reduced operator (`n = 1, 2, …`).
    pub fn reduced_levels(&self, hbar: f64, count: usize) -> Result<Vec<f64>, QuantError> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(invalid("ħ must be positive and finite"));
        }
        if count == 0 {
            return Err(invalid("requested an empty ladder"));
        }
        let base = -self.coupling * self.k_max * hbar;
        let gap = self.reduced_gap(hbar);
        Ok((1..=count)
            .map(|n| base + (n as f64 - 0.5) * gap)
            .collect())
    }

    /// First `count` ladder levels for the full problem at `h = ħ²`.
    pub fn full_levels(&self, h: f64, count: usize) -> Result<Vec<f64>, QuantError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(invalid("h must be positive and finite"));
        }
        let reduced = self.reduced_levels(h.sqrt(), count)?;
        Ok(reduced
            .into_iter()
            .map(|lambda| h * (self.beta_a + lambda))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_minimum() -> BandMinimum {
        BandMinimum {
            a: -0.5,
            sigma_a: 0.6643129231,
            beta_a: 0.3912374700,
            mu_pp: 0.9967251705,
            tol: 1e-10,
            mu_pp_err: 1e-7,
        }
    }

    fn reference_maximum() -> CurvatureMax {
        CurvatureMax {
            s_max: 0.0,
            k_max: 1.0 / 0.36,
            k_pp: -41.1522628,
            copies: 2,
        }
    }

    #[test]
    fn frequency_matches_the_reference_ellipse_value() {
        let model = harmonic_model(&reference_minimum(), &reference_maximum(), 0.0371733023)
            .unwrap();
        assert!(
            (model.omega - 1.234810).abs() < 1e-5,
            "omega {}",
            model.omega
        );
    }

    #[test]
    fn ladder_offset_and_spacing_scale_as_powers_of_hbar() {
        let model = harmonic_model(&reference_minimum(), &reference_maximum(), 0.0371733023)
            .unwrap();
        for &hbar in &[1.0e-2, 2.5e-3, 6.25e-4] {
            let levels = model.reduced_levels(hbar, 3).unwrap();
            // Offset: λ₁ + C·k_max·ħ = ħ^{3/2}·ω/2.
            let offset = levels[0] + model.coupling * model.k_max * hbar;
            assert!((offset - 0.5 * hbar.powf(1.5) * model.omega).abs() < 1e-15);
            // Spacing is uniform and equals the reduced gap.
            let gap = model.reduced_gap(hbar);
            assert!((levels[1] - levels[0] - gap).abs() < 1e-15);
            assert!((levels[2] - levels[1] - gap).abs() < 1e-15);
        }
    }

    #[test]
    fn ladder_prefactor_rederives_from_the_local_oscillator() {
        let model = harmonic_model(&reference_minimum(), &reference_maximum(), 0.0371733023)
            .unwrap();
        for &hbar in &[4.0e-3, 1.0e-3] {
            // Oscillator with kinetic coefficient A = (μ''/2)ħ² and well
            // curvature B = C|k''|ħ/2 has levels (2n−1)√(AB).
            let a_coef = 0.5 * model.mu_pp * hbar * hbar;
            let b_coef = 0.5 * model.coupling * (-model.k_pp) * hbar;
            for n in 1..=4usize {
                let oscillator = (2.0 * n as f64 - 1.0) * (a_coef * b_coef).sqrt();
                let ladder = (n as f64 - 0.5) * model.reduced_gap(hbar);
                assert!(
                    (oscillator - ladder).abs() < 1e-15 * ladder.abs().max(1.0),
                    "n = {n}: {oscillator} vs {ladder}"
                );
            }
        }
    }

    #[test]
    fn full_levels_are_the_scaled_reduced_levels_shifted_by_the_band_minimum() {
        let model = harmonic_model(&reference_minimum(), &reference_maximum(), 0.0371733023)
            .unwrap();
        let h: f64 = 1.6e-5;
        let hbar = h.sqrt();
        let full = model.full_levels(h, 3).unwrap();
        let reduced = model.reduced_levels(hbar, 3).unwrap();
        for (f, r) in full.iter().zip(&reduced) {
            let expected = model.beta_a * h + r * h;
            assert!((f - expected).abs() < 1e-18 + 1e-14 * expected.abs());
        }
        // Leading orders: β_a·h − C·k_max·h^{3/2} + (n−½)·h^{7/4}·ω.
        let explicit = model.beta_a * h - model.coupling * model.k_max * h.powf(1.5)
            + 0.5 * h.powf(1.75) * model.omega;
        assert!((full[0] - explicit).abs() < 1e-16);
    }

    #[test]
    fn rejects_broken_hypotheses() {
        let minimum = reference_minimum();
        let mut flat = reference_maximum();
        flat.k_pp = 0.4;
        assert!(harmonic_model(&minimum, &flat, 0.037).is_err());
        assert!(harmonic_model(&minimum, &reference_maximum(), -0.1).is_err());
        assert!(harmonic_model(&minimum, &reference_maximum(), f64::NAN).is_err());
        let model = harmonic_model(&minimum, &reference_maximum(), 0.037).unwrap();
        assert!(model.reduced_levels(0.0, 2).is_err());
        assert!(model.reduced_levels(1e-2, 0).is_err());
        assert!(model.full_levels(-1.0, 2).is_err());
    }
}
