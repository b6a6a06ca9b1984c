use crate::error::GeometryError;
use crate::sampling::CurveGeometry;

/// Flux-induced momentum offsets of a closed edge at semiclassical
/// parameter `ħ`.
#[derive(Clone, Copy, Debug)]
pub struct FluxOffsets {
    /// Canonical representative of `γ₀/ħ` modulo the momentum-lattice
    /// period `πħ/L`, in `[0, πħ/L)`.
    pub theta: f64,
    /// The integer removed: `γ₀/ħ = θ + m·πħ/L`.
    pub m_index: i64,
    /// Large offset `α_ħ = γ₀/ħ² − σ/ħ` entering the symmetric-well
    /// reduced operator.
    pub alpha_h: f64,
}

/// Compute the flux offsets of a curve.
///
/// `sigma_symmetric` is the symbol minimiser of the symmetric well (it
/// only enters `alpha_h`). The decomposition satisfies the exact identity
/// `α_ħ = (θ − σ)/ħ + m·π/L`, which ties the two offsets together and is
/// asserted in tests to machine precision.
pub fn flux_offsets(
    geom: &CurveGeometry,
    hbar: f64,
    sigma_symmetric: f64,
) -> Result<FluxOffsets, GeometryError> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(GeometryError::invalid(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    let unit = std::f64::consts::PI * hbar / geom.l_half;
    let raw = geom.gamma0 / hbar;
    let mut m = (raw / unit).floor() as i64;
    let mut theta = raw - m as f64 * unit;
    // floating-point guards at lattice boundaries
    if theta < 0.0 {
        m -= 1;
        theta += unit;
    }
    if theta >= unit {
        m += 1;
        theta -= unit;
    }
    let alpha_h = geom.gamma0 / (hbar * hbar) - sigma_symmetric / hbar;
    Ok(FluxOffsets {
        theta,
        m_index: m,
        alpha_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::curve_geometry;
    use crate::spec::CurveSpec;

    const SIGMA_SYMMETRIC: f64 = 0.768_183_653_2;

    fn ellipse() -> CurveGeometry {
        curve_geometry(&CurveSpec::Ellipse { p: 1.0, q: 0.6 }, 512).unwrap()
    }

    #[test]
    fn frozen_offsets_for_the_reference_ellipse() {
        let g = ellipse();
        let f1 = flux_offsets(&g, 1e-2, SIGMA_SYMMETRIC).unwrap();
        let f2 = flux_offsets(&g, 5e-3, SIGMA_SYMMETRIC).unwrap();
        assert!((f1.alpha_h - 3615.263_892_842_8).abs() < 1e-6, "{}", f1.alpha_h);
        assert!((f2.alpha_h - 14_614.692_302_011_1).abs() < 1e-5, "{}", f2.alpha_h);
        // γ₀L/π = 0.3 exactly for this ellipse, so γ₀/ħ sits on a lattice
        // boundary: compare θ modulo the period.
        for (f, hbar, frozen) in [
            (&f1, 1e-2, 1.230_694_086_1e-2),
            (&f2, 5e-3, 6.153_470_430_2e-3),
        ] {
            let unit = std::f64::consts::PI * hbar / g.l_half;
            let d = (f.theta - frozen).abs();
            let modular = d.min(unit - d);
            assert!(modular < 1e-9, "theta = {}, frozen {frozen}", f.theta);
        }
    }

    #[test]
    fn decomposition_is_exact() {
        let g = ellipse();
        for hbar in [0.1, 0.05, 2.5e-2, 1e-2, 5e-3, 1e-3] {
            let f = flux_offsets(&g, hbar, SIGMA_SYMMETRIC).unwrap();
            let unit = std::f64::consts::PI * hbar / g.l_half;
            assert!(f.theta >= 0.0 && f.theta < unit, "theta out of range");
            // modular self-check
            let rebuilt = f.theta + f.m_index as f64 * unit;
            assert!(
                (rebuilt - g.gamma0 / hbar).abs() <= 1e-10 * (g.gamma0 / hbar),
                "γ₀/ħ reconstruction failed at ħ = {hbar}"
            );
            // exact identity α = (θ − σ)/ħ + mπ/L
            let alt = (f.theta - SIGMA_SYMMETRIC) / hbar
                + f.m_index as f64 * std::f64::consts::PI / g.l_half;
            assert!(
                (f.alpha_h - alt).abs() <= 1e-9 * f.alpha_h.abs().max(1.0),
                "identity violated at ħ = {hbar}: {} vs {alt}",
                f.alpha_h
            );
        }
    }

    #[test]
    fn rejects_nonpositive_hbar() {
        let g = ellipse();
        assert!(flux_offsets(&g, 0.0, SIGMA_SYMMETRIC).is_err());
        assert!(flux_offsets(&g, -1.0, SIGMA_SYMMETRIC).is_err());
    }
}
