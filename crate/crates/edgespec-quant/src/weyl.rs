//! Lattice counting function for the quantized band model.
//!
//! With flux offset `θ(ħ)` the admissible longitudinal momenta form the
//! lattice `ξ_m = θ + m·πħ/L`, and the number of band states at or below
//! energy `E` is the number of lattice points inside the sublevel set
//! `{ξ : μ_a(ξ) ≤ E}`. The band is strictly unimodal on the relevant
//! range, so the sublevel set is the single interval `[σ₋, σ₊]` computed
//! by the band-structure solver, and counting is exact integer arithmetic
//! except for lattice points that land within the numerical resolution of
//! an endpoint — those few are classified by evaluating the band directly.
//! The semiclassical prediction for the same count is the lattice density
//! times the interval length, `L·(σ₊ − σ₋)/(π·√h)`.

use band1d::{band_level_set, band_value_auto, BandMinimum, TransverseGrid};
use geometry::{flux_offsets, CurveGeometry};
use std::f64::consts::PI;

use crate::error::{invalid, QuantError};

/// Lattice points within this distance (in momentum units) of a sublevel
/// endpoint are classified by direct band evaluation instead of interval
/// arithmetic. The width covers the endpoint's own numerical uncertainty
/// (bisection stops at 1e−10; the discretized band is accurate to ~1e−8).
const EDGE_RESOLUTION: f64 = 1e-7;

/// One counting-function sample: exact lattice count against the
/// semiclassical prediction.
#[derive(Clone, Copy, Debug)]
pub struct WeylCount {
    /// Semiclassical parameter of the full problem (`h = ħ²`).
    pub h: f64,
    /// Energy the states are counted below.
    pub e: f64,
    /// Exact number of lattice points in the sublevel interval.
    pub count: usize,
    /// `L·(σ₊ − σ₋)/(π·√h)`.
    pub prediction: f64,
}

impl WeylCount {
    /// Measured count over predicted count.
    pub fn ratio(&self) -> f64 {
        self.count as f64 / self.prediction
    }
}

/// Count band states at or below `E` for the curve's flux lattice.
pub fn weyl_count(
    a: f64,
    geom: &CurveGeometry,
    minimum: &BandMinimum,
    e: f64,
    h: f64,
    grid: &TransverseGrid,
) -> Result<WeylCount, QuantError> {
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid("h must be positive and finite"));
    }
    if !(e > minimum.beta_a && e < a.abs()) {
        return Err(invalid(format!(
            "counting window needs β_a < E < |a|: E = {e}, β_a = {}, |a| = {}",
            minimum.beta_a,
            a.abs()
        )));
    }
    let hbar = h.sqrt();
    let flux = flux_offsets(geom, hbar, minimum.sigma_a)?;
    let (sigma_minus, sigma_plus) = band_level_set(a, e, minimum, grid)?;

    let unit = PI * hbar / geom.l_half;
    let lattice = |m: i64| flux.theta + m as f64 * unit;

    // Interval classification: m_lo..=m_hi are the points with
    // σ₋ ≤ ξ_m ≤ σ₊ according to the computed endpoints.
    let m_lo_f = ((sigma_minus - flux.theta) / unit).ceil();
    let m_hi_f = ((sigma_plus - flux.theta) / unit).floor();
    if !(m_lo_f.is_finite() && m_hi_f.is_finite())
        || m_lo_f.abs() > 9.0e15
        || m_hi_f.abs() > 9.0e15
    {
        return Err(invalid("lattice index overflow"));
    }
    let m_lo = m_lo_f as i64;
    let m_hi = m_hi_f as i64;
    let mut count: i64 = (m_hi - m_lo + 1).max(0);

    // Endpoint refinement: any candidate within the resolution band of an
    // endpoint is re-classified by evaluating the band itself, and the
    // interval count is patched where the honest answer differs.
    let mut g = *grid;
    for m in [m_lo - 1, m_lo, m_hi, m_hi + 1] {
        let xi = lattice(m);
        let near_edge = (xi - sigma_minus).abs() < EDGE_RESOLUTION
            || (xi - sigma_plus).abs() < EDGE_RESOLUTION;
        if !near_edge {
            continue;
        }
        let classified = m >= m_lo && m <= m_hi;
        let (point, used) = band_value_auto(a, xi, 1, &g)?;
        g = used;
        let honest = point.mu <= e;
        if honest && !classified {
            count += 1;
        } else if !honest && classified {
            count -= 1;
        }
    }

    let prediction = geom.l_half * (sigma_plus - sigma_minus) / (PI * hbar);
    Ok(WeylCount {
        h,
        e,
        count: count.max(0) as usize,
        prediction,
    })
}
