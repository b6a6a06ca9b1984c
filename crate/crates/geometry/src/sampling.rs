use crate::error::GeometryError;
use crate::spec::CurveSpec;

/// Arc-length description of the closed edge curve.
///
/// `s_samples` is the uniform grid `s_j = −L + 2Lj/n`, `j = 0..n`, with the
/// convention `s = 0` at parameter φ = 0 (negative s wraps through φ = π).
/// The half-length `L`, the enclosed area, curvature and position samples,
/// and the flux density `γ₀ = area/(2L)` are all frozen at construction.
#[derive(Clone, Debug)]
pub struct CurveGeometry {
    /// Half-length: the curve has total length `2L`.
    pub l_half: f64,
    /// Enclosed area.
    pub area: f64,
    /// Mean flux offset `γ₀ = area / (2L)`.
    pub gamma0: f64,
    /// Uniform arc-length grid on `[−L, L)`.
    pub s_samples: Vec<f64>,
    /// Curvature at `s_samples`.
    pub k_samples: Vec<f64>,
    /// Position at `s_samples`.
    pub point_samples: Vec<[f64; 2]>,
    /// Original parameter at `s_samples` (kept for resampling and for
    /// closed-form cross-checks).
    pub phi_samples: Vec<f64>,
    /// The generating description.
    pub spec: CurveSpec,
}

impl CurveGeometry {
    /// Number of arc-length samples.
    pub fn len(&self) -> usize {
        self.s_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_samples.is_empty()
    }

    /// Grid spacing `2L/n`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.l_half / self.len() as f64
    }
}

/// Five-point Gauss–Legendre integral of `f` over `[a, b]`.
pub(crate) fn gauss5(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.236_926_885_056_189,
        0.478_628_670_499_366,
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
    ];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in X.iter().zip(W) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Build the arc-length geometry of a closed curve.
///
/// Cumulative arc length is accumulated per parameter cell with Simpson's
/// rule (midpoint included, fourth order); the uniform `s`-grid is pulled
/// back to the parameter by bracketed Newton iteration on the cumulative
/// table, with five-point Gauss segments supplying the residual integral.
/// The enclosed area uses the Green identity `½∮(x y' − y x')dφ` under the
/// periodic trapezoid rule, which converges spectrally for these analytic
/// curves. A turning-number check `∮k v dφ = 2π` rejects self-intersecting
/// or misoriented input.
pub fn curve_geometry(spec: &CurveSpec, n: usize) -> Result<CurveGeometry, GeometryError> {
    spec.validate()?;
    if n < 64 {
        return Err(GeometryError::invalid(format!(
            "need at least 64 arc samples, got {n}"
        )));
    }

    // Parameter resolution: comfortably finer than the s-grid.
    let n_param = (4 * n).max(4096);
    let h = 2.0 * std::f64::consts::PI / n_param as f64;

    // Cumulative Simpson table of s(φ) at φ_i = i·h.
    let mut cumulative = vec![0.0_f64; n_param + 1];
    let mut speed_nodes = vec![0.0_f64; n_param + 1];
    for i in 0..=n_param {
        speed_nodes[i] = spec.speed(i as f64 * h);
    }
    for i in 0..n_param {
        let mid = spec.speed((i as f64 + 0.5) * h);
        cumulative[i + 1] =
            cumulative[i] + h / 6.0 * (speed_nodes[i] + 4.0 * mid + speed_nodes[i + 1]);
    }
    let total = cumulative[n_param];
    let l_half = 0.5 * total;

    // Area and turning number by periodic trapezoid in φ.
    let mut area2 = 0.0;
    let mut turning = 0.0;
    for i in 0..n_param {
        let phi = i as f64 * h;
        let [x, y] = spec.position(phi);
        let [vx, vy] = spec.velocity(phi);
        area2 += x * vy - y * vx;
        turning += spec.curvature(phi) * speed_nodes[i];
    }
    let area = 0.5 * area2 * h;
    let turning = turning * h / (2.0 * std::f64::consts::PI);
    if (turning - 1.0).abs() > 1e-6 {
        return Err(GeometryError::RejectedCurve(format!(
            "turning number {turning} ≠ 1 (self-intersection or wrong orientation)"
        )));
    }
    if !(area.is_finite() && area > 0.0) {
        return Err(GeometryError::RejectedCurve(format!(
            "enclosed area {area} not positive"
        )));
    }

    // Pull the uniform s-grid back to the parameter.
    let spacing = total / n as f64;
    let mut s_samples = Vec::with_capacity(n);
    let mut k_samples = Vec::with_capacity(n);
    let mut point_samples = Vec::with_capacity(n);
    let mut phi_samples = Vec::with_capacity(n);
    let speed = |phi: f64| spec.speed(phi);
    for j in 0..n {
        let s = -l_half + j as f64 * spacing;
        // Arc length measured from φ = 0, wrapping negative s forward.
        let target = if s < 0.0 { s + total } else { s };
        let mut lo = cumulative.partition_point(|&c| c <= target).saturating_sub(1);
        lo = lo.min(n_param - 1);
        let mut phi = lo as f64 * h
            + if speed_nodes[lo] > 0.0 {
                (target - cumulative[lo]) / speed_nodes[lo]
            } else {
                0.0
            };
        for _ in 0..40 {
            let residual = cumulative[lo] + gauss5(&speed, lo as f64 * h, phi) - target;
            if residual.abs() <= 1e-13 * total {
                break;
            }
            phi -= residual / speed(phi);
        }
        s_samples.push(s);
        k_samples.push(spec.curvature(phi));
        point_samples.push(spec.position(phi));
        phi_samples.push(phi);
    }

    Ok(CurveGeometry {
        l_half,
        area,
        gamma0: area / total,
        s_samples,
        k_samples,
        point_samples,
        phi_samples,
        spec: spec.clone(),
    })
}
