use crate::error::Band1dError;

/// Piecewise-constant field profile: 1 on `t > 0`, `a` on `t < 0`. The
/// value at `t = 0` is irrelevant downstream because it only ever appears
/// multiplied by `t`.
#[inline]
pub fn step_field(a: f64, t: f64) -> f64 {
    if t < 0.0 {
        a
    } else {
        1.0
    }
}

/// Physical parameters of one model instance: field ratio, semiclassical
/// parameter, and the energy window used for counting functions.
#[derive(Clone, Copy, Debug)]
pub struct ModelParams {
    a: f64,
    h: f64,
    hbar: f64,
    e: f64,
    e_plus: f64,
}

impl ModelParams {
    /// Validate and build. The attracting-edge regime needs `a ∈ [−1, 0)`;
    /// positive ratios up to 1 are admitted for cross-checks against the
    /// uniform-field model (where the window constraints do not apply).
    pub fn new(a: f64, h: f64, e: f64, e_plus: f64) -> Result<Self, Band1dError> {
        if !a.is_finite() || !(-1.0..=1.0).contains(&a) || a.abs() < 1e-9 {
            return Err(Band1dError::invalid(format!(
                "field ratio a = {a} outside [−1, 1] or degenerate"
            )));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Band1dError::invalid(format!("h = {h} must be positive")));
        }
        if a < 0.0 {
            if !(0.0 < e && e < e_plus && e_plus < a.abs()) {
                return Err(Band1dError::invalid(format!(
                    "energy window must satisfy 0 < E < E⁺ < |a| (got E = {e}, E⁺ = {e_plus}, |a| = {})",
                    a.abs()
                )));
            }
        } else if !(e.is_finite() && e_plus.is_finite()) {
            return Err(Band1dError::invalid("non-finite energy window"));
        }
        Ok(ModelParams {
            a,
            h,
            hbar: h.sqrt(),
            e,
            e_plus,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    /// √h.
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn energy(&self) -> f64 {
        self.e
    }
    pub fn energy_plus(&self) -> f64 {
        self.e_plus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_profile_values() {
        assert_eq!(step_field(-0.5, 2.0), 1.0);
        assert_eq!(step_field(-0.5, -2.0), -0.5);
    }

    #[test]
    fn validation() {
        assert!(ModelParams::new(-0.5, 1e-3, 0.3, 0.4).is_ok());
        // E window inverted.
        assert!(ModelParams::new(-0.5, 1e-3, 0.4, 0.3).is_err());
        // E⁺ not below |a|.
        assert!(ModelParams::new(-0.5, 1e-3, 0.3, 0.6).is_err());
        // Degenerate ratio.
        assert!(ModelParams::new(0.0, 1e-3, 0.3, 0.4).is_err());
        // Bad h.
        assert!(ModelParams::new(-0.5, 0.0, 0.3, 0.4).is_err());
        // Uniform-field check instance: window unconstrained.
        assert!(ModelParams::new(1.0, 1e-3, 9.0, 9.5).is_ok());
        let p = ModelParams::new(-1.0, 4e-4, 0.7, 0.8).unwrap();
        assert!((p.hbar() - 0.02).abs() < 1e-15);
    }
}
