use band1d::{band_minimum, BandMinimum, TransverseGrid};
use geometry::CurveGeometry;

use crate::elements::{q1_pm, q2_pm};
use crate::error::EffSymbolError;

/// Curvature-stripped symbol coefficients at one `(a, σ)` point.
#[derive(Clone, Copy, Debug)]
pub struct SymbolCoefficients {
    pub a: f64,
    pub sigma: f64,
    /// First-order coefficient: the full coupling is `k(s)·g1`.
    pub g1: f64,
    /// `∂_σ g1`.
    pub g1_prime_sigma: f64,
    /// Second-order coefficient at `z = β_a`: the full block is `k(s)²·g2`.
    pub g2: f64,
}

/// Evaluate all curvature-stripped coefficients at the band minimum
/// `σ = σ(a)`, with the resolvent energy fixed to `β_a`.
pub fn symbol_coefficients(
    a: f64,
    minimum: &BandMinimum,
    grid: &TransverseGrid,
) -> Result<SymbolCoefficients, EffSymbolError> {
    let (g1, g1_prime_sigma) = q1_pm(a, minimum.sigma_a, grid)?;
    let g2 = q2_pm(a, minimum.sigma_a, minimum.beta_a, grid)?;
    Ok(SymbolCoefficients {
        a,
        sigma: minimum.sigma_a,
        g1,
        g1_prime_sigma,
        g2,
    })
}

/// The reduced quadratic symbol sampled on a curve's arc-length grid.
///
/// With `k = k(s)` the curvature, the three sequences are
///
/// * `lin(s)  = k·g1` — the first-order attraction to curvature maxima,
/// * `c1(s)   = k·∂_σg1/μ''` — the momentum shift completing the square,
/// * `quad(s) = k²·g2 + (k·∂_σg1)²/(2μ'')` — the second-order block left
///   after the shift.
#[derive(Clone, Debug)]
pub struct ReducedSymbol {
    pub a: f64,
    pub sigma_a: f64,
    pub mu_pp: f64,
    /// The coefficients the samples were assembled from.
    pub coefficients: SymbolCoefficients,
    /// Arc-length grid shared with the generating geometry.
    pub s_samples: Vec<f64>,
    /// Curvature on that grid (copied for report output).
    pub k_samples: Vec<f64>,
    pub lin_samples: Vec<f64>,
    pub c1_samples: Vec<f64>,
    pub quad_samples: Vec<f64>,
}

/// Assemble the reduced symbol of ratio `a` on a curve.
pub fn reduced_symbol(
    a: f64,
    geom: &CurveGeometry,
    grid: &TransverseGrid,
) -> Result<ReducedSymbol, EffSymbolError> {
    let minimum = band_minimum(a, grid, 1e-9)?;
    let coefficients = symbol_coefficients(a, &minimum, grid)?;
    reduced_symbol_from_parts(&minimum, &coefficients, geom)
}

/// Same assembly with precomputed minimum and coefficients (the expensive
/// transverse solves), for callers that reuse them across curves or ħ.
pub fn reduced_symbol_from_parts(
    minimum: &BandMinimum,
    coefficients: &SymbolCoefficients,
    geom: &CurveGeometry,
) -> Result<ReducedSymbol, EffSymbolError> {
    if coefficients.a != minimum.a {
        return Err(EffSymbolError::invalid(format!(
            "coefficients for a = {} paired with minimum for a = {}",
            coefficients.a, minimum.a
        )));
    }
    let mu_pp = minimum.mu_pp;
    if !(mu_pp.is_finite() && mu_pp > 0.0) {
        return Err(EffSymbolError::invalid(format!(
            "band curvature μ'' = {mu_pp} must be positive"
        )));
    }
    let mut lin = Vec::with_capacity(geom.len());
    let mut c1 = Vec::with_capacity(geom.len());
    let mut quad = Vec::with_capacity(geom.len());
    for &k in &geom.k_samples {
        lin.push(k * coefficients.g1);
        c1.push(k * coefficients.g1_prime_sigma / mu_pp);
        let shift = k * coefficients.g1_prime_sigma;
        quad.push(k * k * coefficients.g2 + shift * shift / (2.0 * mu_pp));
    }
    Ok(ReducedSymbol {
        a: minimum.a,
        sigma_a: minimum.sigma_a,
        mu_pp,
        coefficients: *coefficients,
        s_samples: geom.s_samples.clone(),
        k_samples: geom.k_samples.clone(),
        lin_samples: lin,
        c1_samples: c1,
        quad_samples: quad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use geometry::{curve_geometry, curvature_max, CurveSpec};

    fn grid() -> TransverseGrid {
        TransverseGrid::with_spacing(16.0, 1e-2).unwrap()
    }

    #[test]
    fn circle_samples_are_constant() {
        let geom = curve_geometry(&CurveSpec::Circle { radius: 1.0 }, 128).unwrap();
        let sym = reduced_symbol(-0.5, &geom, &grid()).unwrap();
        for seq in [&sym.lin_samples, &sym.c1_samples, &sym.quad_samples] {
            let first = seq[0];
            assert!(
                seq.iter().all(|&v| (v - first).abs() < 1e-10),
                "sequence not constant on a circle"
            );
        }
    }

    #[test]
    fn symmetric_case_has_no_first_order_structure() {
        let geom = curve_geometry(&CurveSpec::Ellipse { p: 1.0, q: 0.6 }, 128).unwrap();
        let sym = reduced_symbol(-1.0, &geom, &grid()).unwrap();
        assert!(sym.lin_samples.iter().all(|v| v.abs() < 1e-6));
        assert!(sym.c1_samples.iter().all(|v| v.abs() < 1e-6));
        // quad reduces to g2·k² exactly when the shift vanishes
        for (i, &q) in sym.quad_samples.iter().enumerate() {
            let k = sym.k_samples[i];
            let pure = sym.coefficients.g2 * k * k;
            assert!((q - pure).abs() < 1e-6 * pure.abs().max(1.0));
        }
    }

    #[test]
    fn linear_attraction_peaks_at_the_curvature_maximum() {
        let geom = curve_geometry(&CurveSpec::Ellipse { p: 1.0, q: 0.6 }, 256).unwrap();
        let sym = reduced_symbol(-0.5, &geom, &grid()).unwrap();
        assert!(sym.coefficients.g1 > 0.0, "C(a) = −M₃ > 0");
        let argmax_lin = sym
            .lin_samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        let m = curvature_max(&geom).unwrap();
        assert!(
            (sym.s_samples[argmax_lin] - m.s_max).abs() <= geom.spacing(),
            "lin peaks at s = {}, curvature max at {}",
            sym.s_samples[argmax_lin],
            m.s_max
        );
    }

    #[test]
    fn separability_of_the_first_order_coupling() {
        // lin(s)/k(s) must be s-independent by construction.
        let geom = curve_geometry(
            &CurveSpec::PerturbedCircle {
                radius: 1.0,
                amplitudes: vec![0.02, 0.04],
            },
            128,
        )
        .unwrap();
        let sym = reduced_symbol(-0.75, &geom, &grid()).unwrap();
        for (l, k) in sym.lin_samples.iter().zip(&sym.k_samples) {
            assert!((l / k - sym.coefficients.g1).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_mismatched_parts() {
        let g = grid();
        let m_half = band_minimum(-0.5, &g, 1e-8).unwrap();
        let m_one = band_minimum(-1.0, &g, 1e-8).unwrap();
        let coeff = symbol_coefficients(-0.5, &m_half, &g).unwrap();
        let geom = curve_geometry(&CurveSpec::Circle { radius: 1.0 }, 64).unwrap();
        assert!(reduced_symbol_from_parts(&m_one, &coeff, &geom).is_err());
    }
}
