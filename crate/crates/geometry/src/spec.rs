use crate::error::GeometryError;

/// Parametric description of the boundary curve, all counterclockwise and
/// 2π-periodic in the parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveSpec {
    /// Circle of the given radius.
    Circle { radius: f64 },
    /// Axis-aligned ellipse `(p cos φ, q sin φ)`.
    Ellipse { p: f64, q: f64 },
    /// Polar graph `r(φ) = R(1 + Σ_j ε_j cos(jφ))`, `j = 1..=amplitudes.len()`.
    PerturbedCircle { radius: f64, amplitudes: Vec<f64> },
}

impl CurveSpec {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let positive = |v: f64, name: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(GeometryError::invalid(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            CurveSpec::Circle { radius } => positive(*radius, "radius"),
            CurveSpec::Ellipse { p, q } => {
                positive(*p, "semi-axis p")?;
                positive(*q, "semi-axis q")
            }
            CurveSpec::PerturbedCircle { radius, amplitudes } => {
                positive(*radius, "radius")?;
                if amplitudes.iter().any(|e| !e.is_finite()) {
                    return Err(GeometryError::invalid("non-finite amplitude"));
                }
                // r stays positive for any φ when the amplitudes cannot sum
                // against the constant term.
                let reach: f64 = amplitudes.iter().map(|e| e.abs()).sum();
                if reach >= 1.0 {
                    return Err(GeometryError::RejectedCurve(format!(
                        "cosine amplitudes reach {reach} ≥ 1; the radius can vanish"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Position `M(φ)`.
    pub fn position(&self, phi: f64) -> [f64; 2] {
        match self {
            CurveSpec::Circle { radius } => [radius * phi.cos(), radius * phi.sin()],
            CurveSpec::Ellipse { p, q } => [p * phi.cos(), q * phi.sin()],
            CurveSpec::PerturbedCircle { .. } => {
                let r = self.polar(phi).r;
                [r * phi.cos(), r * phi.sin()]
            }
        }
    }

    /// First parameter derivative `M'(φ)`.
    pub fn velocity(&self, phi: f64) -> [f64; 2] {
        match self {
            CurveSpec::Circle { radius } => [-radius * phi.sin(), radius * phi.cos()],
            CurveSpec::Ellipse { p, q } => [-p * phi.sin(), q * phi.cos()],
            CurveSpec::PerturbedCircle { .. } => {
                let pd = self.polar(phi);
                let (s, c) = phi.sin_cos();
                [pd.r1 * c - pd.r * s, pd.r1 * s + pd.r * c]
            }
        }
    }

    /// Parameter speed `|M'(φ)|`.
    pub fn speed(&self, phi: f64) -> f64 {
        let [vx, vy] = self.velocity(phi);
        vx.hypot(vy)
    }

    /// Signed curvature `k(φ) = (x'y'' − y'x'') / |M'|³` (positive for the
    /// counterclockwise circle, normal pointing into the enclosed region).
    pub fn curvature(&self, phi: f64) -> f64 {
        match self {
            CurveSpec::Circle { radius } => 1.0 / radius,
            CurveSpec::Ellipse { p, q } => {
                let (s, c) = phi.sin_cos();
                let v2 = p * p * s * s + q * q * c * c;
                p * q / (v2 * v2.sqrt())
            }
            CurveSpec::PerturbedCircle { .. } => {
                let pd = self.polar(phi);
                let v2 = pd.r * pd.r + pd.r1 * pd.r1;
                (pd.r * pd.r + 2.0 * pd.r1 * pd.r1 - pd.r * pd.r2) / (v2 * v2.sqrt())
            }
        }
    }

    /// Exact second arc-length derivative of curvature, available for the
    /// polar family where closed forms are practical; used as the
    /// independent check against the sampled-spline route.
    pub fn polar_curvature_ss(&self, phi: f64) -> Option<f64> {
        let CurveSpec::PerturbedCircle { .. } = self else {
            return None;
        };
        let pd = self.polar(phi);
        let (r, r1, r2, r3, r4) = (pd.r, pd.r1, pd.r2, pd.r3, pd.r4);
        let v2 = r * r + r1 * r1;
        let v = v2.sqrt();
        let a = r * r + 2.0 * r1 * r1 - r * r2;
        let a1 = 2.0 * r * r1 + 3.0 * r1 * r2 - r * r3;
        let a2 = 2.0 * r1 * r1 + 2.0 * r * r2 + 3.0 * r2 * r2 + 2.0 * r1 * r3 - r * r4;
        let v1 = (r * r1 + r1 * r2) / v;
        let v2d = ((r1 * r1 + r * r2 + r2 * r2 + r1 * r3) - v1 * v1) / v;
        let k2_phi = a2 / v.powi(3) - 6.0 * a1 * v1 / v.powi(4) - 3.0 * a * v2d / v.powi(4)
            + 12.0 * a * v1 * v1 / v.powi(5);
        let k1_phi = a1 / v.powi(3) - 3.0 * a * v1 / v.powi(4);
        Some(k2_phi / v2 - k1_phi * v1 / (v2 * v))
    }

    fn polar(&self, phi: f64) -> PolarDerivatives {
        let CurveSpec::PerturbedCircle { radius, amplitudes } = self else {
            unreachable!("polar data requested for a non-polar curve");
        };
        let mut d = PolarDerivatives {
            r: 1.0,
            r1: 0.0,
            r2: 0.0,
            r3: 0.0,
            r4: 0.0,
        };
        for (idx, &eps) in amplitudes.iter().enumerate() {
            let j = (idx + 1) as f64;
            let (s, c) = (j * phi).sin_cos();
            d.r += eps * c;
            d.r1 -= eps * j * s;
            d.r2 -= eps * j * j * c;
            d.r3 += eps * j * j * j * s;
            d.r4 += eps * j * j * j * j * c;
        }
        d.r *= radius;
        d.r1 *= radius;
        d.r2 *= radius;
        d.r3 *= radius;
        d.r4 *= radius;
        d
    }
}

struct PolarDerivatives {
    r: f64,
    r1: f64,
    r2: f64,
    r3: f64,
    r4: f64,
}
