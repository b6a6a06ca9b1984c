//! Shared fixtures for the unit tests.

use std::f64::consts::PI;

use band1d::TransverseGrid;
use effsymbol::{reduced_symbol, ReducedSymbol, SymbolCoefficients};
use geometry::{curve_geometry, CurveSpec};

/// Reduced symbol of the unit circle at ratio −1/2: every profile is
/// constant, so quantizations have a diagonal closed form.
pub(crate) fn circle_symbol(n: usize) -> ReducedSymbol {
    let geom = curve_geometry(&CurveSpec::Circle { radius: 1.0 }, n).unwrap();
    let grid = TransverseGrid::with_spacing(16.0, 1e-2).unwrap();
    reduced_symbol(-0.5, &geom, &grid).unwrap()
}

/// Hand-built symbol with an odd `sin(πs/L)` component in every profile:
/// its Fourier coefficients are imaginary, forcing the complex assembly
/// path that no mirror-symmetric curve exercises.
pub(crate) fn odd_symbol(n: usize, l_half: f64) -> ReducedSymbol {
    let spacing = 2.0 * l_half / n as f64;
    let s: Vec<f64> = (0..n).map(|j| -l_half + j as f64 * spacing).collect();
    let ripple: Vec<f64> = s.iter().map(|&s| (PI * s / l_half).sin()).collect();
    ReducedSymbol {
        a: -0.5,
        sigma_a: 0.6643129231,
        mu_pp: 0.9967251705,
        coefficients: SymbolCoefficients {
            a: -0.5,
            sigma: 0.6643129231,
            g1: 0.037,
            g1_prime_sigma: 0.024,
            g2: 0.04,
        },
        s_samples: s,
        k_samples: vec![1.0; n],
        lin_samples: ripple.iter().map(|r| 0.037 * (1.0 + 0.3 * r)).collect(),
        c1_samples: ripple.iter().map(|r| 0.02 * (1.0 + 0.5 * r)).collect(),
        quad_samples: ripple.iter().map(|r| 0.04 * (1.0 + 0.2 * r)).collect(),
    }
}
