use crate::error::GeometryError;
use crate::sampling::CurveGeometry;

/// Window below the global sampled maximum inside which another local
/// maximum is treated as a contender for the true maximum.
const CONTENDER_WINDOW: f64 = 1e-9;
/// Two contenders are symmetric copies only if their refined values agree
/// this tightly (relative to `max(1, k)`).
const COPY_VALUE_TOL: f64 = 1e-12;
/// … and their refined second derivatives agree this tightly (relative to
/// `max(1, |k''|)`).
const COPY_KPP_TOL: f64 = 1e-6;

/// The curvature maximum of a closed curve in arc-length form.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureMax {
    /// Arc-length position of the canonical maximum (wrapped to `[−L, L)`).
    pub s_max: f64,
    /// Refined maximal curvature.
    pub k_max: f64,
    /// Second arc-length derivative `k''(s_max)` (negative).
    pub k_pp: f64,
    /// Number of symmetric copies of the maximum found on the curve
    /// (1 for a generic curve, 2 for an ellipse, m for an m-lobed one).
    pub copies: usize,
}

/// Locate the curvature maximum and its second derivative.
///
/// Grid local maxima are refined by a parabolic fit through the three
/// neighbouring samples; `k''` is evaluated with a five-point stencil (step
/// = the grid spacing) on a periodic cubic spline of the curvature profile.
///
/// Curves whose curvature is constant at sampling precision (circles) have
/// no distinguished maximum and are rejected. Several equally high maxima
/// are accepted only when they are certified symmetric copies of one
/// another — refined values within `1e−12` and refined `k''` within
/// `1e−6` (both relative) — in which case the copy closest to `s = 0` is
/// returned. Near-ties that fail that certificate are ambiguous at
/// sampling resolution and produce an error; for curves with an m-fold
/// symmetric maximum, choose a sample count divisible by m so the copies
/// fall on equivalent grid positions.
pub fn curvature_max(geom: &CurveGeometry) -> Result<CurvatureMax, GeometryError> {
    let k = &geom.k_samples;
    let n = k.len();
    if n < 8 {
        return Err(GeometryError::invalid("need at least 8 curvature samples"));
    }
    let global = k.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lowest = k.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = global.abs().max(1.0);
    if global - lowest <= CONTENDER_WINDOW * scale {
        return Err(GeometryError::NonUniqueMax(format!(
            "curvature is constant ({global:.6}) at sampling precision; no distinguished maximum"
        )));
    }

    let spacing = geom.spacing();
    let two_l = 2.0 * geom.l_half;
    let spline = PeriodicSpline::fit(-geom.l_half, spacing, k);

    // Contenders: cyclic grid local maxima within the window of the global max.
    let mut contenders: Vec<(f64, f64, f64)> = Vec::new(); // (s*, k*, k''*)
    for i in 0..n {
        let prev = k[(i + n - 1) % n];
        let next = k[(i + 1) % n];
        if !(k[i] >= prev && k[i] >= next) {
            continue;
        }
        if k[i] < global - CONTENDER_WINDOW * scale {
            continue;
        }
        let concavity = prev - 2.0 * k[i] + next;
        if !(concavity < 0.0) {
            return Err(GeometryError::NonUniqueMax(format!(
                "flat curvature maximum near s = {:.6}: cannot refine",
                geom.s_samples[i]
            )));
        }
        let offset = 0.5 * spacing * (prev - next) / concavity;
        let k_star = k[i] - (prev - next).powi(2) / (8.0 * concavity);
        let mut s_star = geom.s_samples[i] + offset;
        if s_star < -geom.l_half {
            s_star += two_l;
        } else if s_star >= geom.l_half {
            s_star -= two_l;
        }
        let k_pp = stencil_second_derivative(&spline, s_star, spacing);
        contenders.push((s_star, k_star, k_pp));
    }
    if contenders.is_empty() {
        return Err(GeometryError::NonUniqueMax(
            "no refinable curvature maximum found".into(),
        ));
    }

    // All contenders must be certified copies of the highest one.
    let (_, k_ref, kpp_ref) = *contenders
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    let kpp_scale = kpp_ref.abs().max(1.0);
    for &(s, kv, kpp) in &contenders {
        let value_gap = (kv - k_ref).abs();
        let kpp_gap = (kpp - kpp_ref).abs();
        if value_gap > COPY_VALUE_TOL * scale || kpp_gap > COPY_KPP_TOL * kpp_scale {
            return Err(GeometryError::NonUniqueMax(format!(
                "two near-equal curvature maxima (k = {k_ref:.12} and {kv:.12} at s = {s:.6}) \
                 are not symmetric copies; increase or symmetrise the sample count"
            )));
        }
    }
    let copies = contenders.len();
    let (s_max, k_max, k_pp) = *contenders
        .iter()
        .min_by(|a, b| a.0.abs().total_cmp(&b.0.abs()))
        .expect("non-empty");

    if !(k_pp < 0.0) {
        return Err(GeometryError::RejectedCurve(format!(
            "curvature maximum at s = {s_max:.6} is degenerate: k'' = {k_pp:.3e} ≥ 0"
        )));
    }
    Ok(CurvatureMax {
        s_max,
        k_max,
        k_pp,
        copies,
    })
}

fn stencil_second_derivative(spline: &PeriodicSpline, s: f64, step: f64) -> f64 {
    (-spline.eval(s - 2.0 * step) + 16.0 * spline.eval(s - step) - 30.0 * spline.eval(s)
        + 16.0 * spline.eval(s + step)
        - spline.eval(s + 2.0 * step))
        / (12.0 * step * step)
}

/// Periodic cubic spline on a uniform grid (knot second derivatives from
/// the cyclic tridiagonal system, solved by Thomas elimination plus a
/// Sherman–Morrison corner correction).
struct PeriodicSpline {
    s0: f64,
    h: f64,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl PeriodicSpline {
    fn fit(s0: f64, h: f64, y: &[f64]) -> Self {
        let n = y.len();
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            let prev = y[(i + n - 1) % n];
            let next = y[(i + 1) % n];
            rhs[i] = 6.0 * (prev - 2.0 * y[i] + next) / (h * h);
        }
        let m = solve_cyclic_141(&rhs);
        Self {
            s0,
            h,
            y: y.to_vec(),
            m,
        }
    }

    fn eval(&self, s: f64) -> f64 {
        let n = self.y.len();
        let period = self.h * n as f64;
        let u = (s - self.s0).rem_euclid(period);
        let mut i = (u / self.h).floor() as usize;
        if i >= n {
            i = n - 1;
        }
        let t = u - i as f64 * self.h;
        let j = (i + 1) % n;
        let h = self.h;
        let a = h - t;
        self.m[i] * a * a * a / (6.0 * h)
            + self.m[j] * t * t * t / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * a
            + (self.y[j] / h - self.m[j] * h / 6.0) * t
    }
}

/// Solve the cyclic tridiagonal system with constant stencil (1, 4, 1).
fn solve_cyclic_141(rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    assert!(n >= 3);
    let gamma = -4.0;
    let mut diag = vec![4.0; n];
    diag[0] -= gamma;
    diag[n - 1] -= 1.0 / gamma;
    let x = thomas_unit_offdiag(&diag, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = 1.0;
    let z = thomas_unit_offdiag(&diag, &u);
    let vx = x[0] + x[n - 1] / gamma;
    let vz = z[0] + z[n - 1] / gamma;
    let factor = vx / (1.0 + vz);
    x.iter().zip(&z).map(|(xi, zi)| xi - factor * zi).collect()
}

/// Thomas elimination for a tridiagonal system with unit off-diagonals.
fn thomas_unit_offdiag(diag: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    c[0] = 1.0 / diag[0];
    x[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - c[i - 1];
        c[i] = 1.0 / m;
        x[i] = (rhs[i] - x[i - 1]) / m;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}
