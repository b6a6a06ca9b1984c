//! Temporary probe: measure agreement with the frozen reference tables.

use band1d::{band_minimum, TransverseGrid};
use edgespec_quant::{
    a_minus1_operator, default_mode_count, harmonic_model, quantize_reduced, spectrum_lowest,
};
use effsymbol::reduced_symbol;
use geometry::{curvature_max, curve_geometry, flux_offsets, CurveSpec};

fn main() {
    let t0 = std::time::Instant::now();
    let geom = curve_geometry(&CurveSpec::Ellipse { p: 1.0, q: 0.6 }, 4096).unwrap();
    let grid = TransverseGrid::with_spacing(16.0, 5e-3).unwrap();
    let rs = reduced_symbol(-0.5, &geom, &grid).unwrap();
    let cmax = curvature_max(&geom).unwrap();
    println!("setup: {:?}", t0.elapsed());
    println!(
        "g1={:.10} g1'={:.10} g2={:.10} mu_pp={:.10} sigma_a={:.10}",
        rs.coefficients.g1,
        rs.coefficients.g1_prime_sigma,
        rs.coefficients.g2,
        rs.mu_pp,
        rs.sigma_a
    );

    let minimum = band_minimum(-0.5, &grid, 1e-9).unwrap();
    let model = harmonic_model(&minimum, &cmax, rs.coefficients.g1).unwrap();
    println!("omega={:.7}", model.omega);

    let frozen: [(f64, f64, f64, f64, f64); 3] = [
        // hbar, theta, lambda1, lambda2-lambda1, lambda3-lambda1
        (
            0.025,
            3.0767352151e-2,
            -1.217202994274e-3,
            6.276449e-5,
            1.171219197912e-3,
        ),
        (
            4.0e-3,
            4.9227763442e-3,
            -2.926155354226e-4,
            2.602950e-8,
            1.555691487596e-4,
        ),
        (
            1.0e-3,
            1.2306940859e-3,
            -8.627248956900e-5,
            3.001622e-9,
            2.789828593458e-5,
        ),
    ];
    for (hbar, theta_f, l1_f, d21_f, d31_f) in frozen {
        let t = std::time::Instant::now();
        let flux = flux_offsets(&geom, hbar, rs.sigma_a).unwrap();
        let m = default_mode_count(0.3588936164, 1.0708909987, geom.l_half, hbar).unwrap();
        let op = quantize_reduced(&rs, hbar, flux.theta, m).unwrap();
        let s = spectrum_lowest(&op, 4).unwrap();
        let l = &s.eigenvalues;
        let unit = std::f64::consts::PI * hbar / geom.l_half;
        let dtheta = (flux.theta - theta_f).abs();
        let dtheta = dtheta.min((unit - dtheta).abs());
        let r = (l[0] + rs.coefficients.g1 * cmax.k_max * hbar) / hbar.powf(1.5)
            - 0.5 * model.omega;
        println!(
            "hbar={hbar:.1e} N={} theta={:.10e} (mod-d {dtheta:.2e}) t={:?}",
            op.order(),
            flux.theta,
            t.elapsed()
        );
        println!(
            "  l1={:.12e} d(l1)={:.2e}  d21={:.6e} d(d21)={:.2e}  d31={:.12e} d(d31)={:.2e}",
            l[0],
            (l[0] - l1_f).abs(),
            l[1] - l[0],
            ((l[1] - l[0]) - d21_f).abs(),
            l[2] - l[0],
            ((l[2] - l[0]) - d31_f).abs()
        );
        println!(
            "  r={:.6}  gap-ratio={:.4}  trunc={:.2e} herm={:.2e} gap={:.2e} conv={}",
            r,
            (l[2] - l[0]) / model.reduced_gap(hbar),
            s.diagnostics.truncation_mass,
            s.diagnostics.hermiticity_residual,
            s.diagnostics.solver_gap,
            s.diagnostics.diagnostics_converged
        );
    }

    // Field ratio -1: symmetric well.
    let t = std::time::Instant::now();
    let rs1 = reduced_symbol(-1.0, &geom, &grid).unwrap();
    let min1 = band_minimum(-1.0, &grid, 1e-9).unwrap();
    println!(
        "a=-1 setup {:?}: g1={:.3e} c1~{:.3e} g2={:.10} sigma={:.10} mu_pp={:.10}",
        t.elapsed(),
        rs1.coefficients.g1,
        rs1.coefficients.g1_prime_sigma,
        rs1.coefficients.g2,
        rs1.sigma_a,
        rs1.mu_pp
    );

    let gamma_frozen: [(f64, [f64; 4]); 2] = [
        (
            1.0e-2,
            [0.2802753299, 0.4232420068, 1.9180120953, 2.3489489686],
        ),
        (
            5.0e-3,
            [0.1489467154, 0.7385743279, 1.3387631860, 3.1234127830],
        ),
    ];
    for (hbar, gf) in gamma_frozen {
        // Same-constant direct route.
        let op_d = a_minus1_operator(&geom, hbar, rs1.coefficients.g2, min1.mu_pp, min1.sigma_a, 64)
            .unwrap();
        let sd = spectrum_lowest(&op_d, 4).unwrap();
        // Reduced-quantization route at the same constant.
        let m = default_mode_count(0.2089686993, 1.4963137623, geom.l_half, hbar).unwrap();
        let flux = flux_offsets(&geom, hbar, rs1.sigma_a).unwrap();
        let op_q = quantize_reduced(&rs1, hbar, flux.theta, m).unwrap();
        let sq = spectrum_lowest(&op_q, 4).unwrap();
        let worst_rt: f64 = sd
            .eigenvalues
            .iter()
            .zip(&sq.eigenvalues)
            .map(|(d, q)| (d - q / (hbar * hbar)).abs())
            .fold(0.0, f64::max);
        let worst_frozen: f64 = sd
            .eigenvalues
            .iter()
            .zip(&gf)
            .map(|(d, f)| (d - f).abs())
            .fold(0.0, f64::max);
        println!(
            "a=-1 hbar={hbar:.1e}: gamma={:?}",
            sd.eigenvalues
                .iter()
                .map(|x| format!("{x:.10}"))
                .collect::<Vec<_>>()
        );
        println!("  d(frozen)={worst_frozen:.2e}  cross-route={worst_rt:.2e}");
        // Spec-constant route.
        let op_s =
            a_minus1_operator(&geom, hbar, -0.6198860220, min1.mu_pp, min1.sigma_a, 64).unwrap();
        let ss = spectrum_lowest(&op_s, 4).unwrap();
        println!(
            "  spec-constant gamma={:?}",
            ss.eigenvalues
                .iter()
                .map(|x| format!("{x:.10}"))
                .collect::<Vec<_>>()
        );
        let resid: f64 = ss
            .eigenvalues
            .iter()
            .zip(&sq.eigenvalues)
            .map(|(s, q)| (s - q / (hbar * hbar)).abs())
            .fold(0.0, f64::max);
        println!("  cross-route residual (spec constant) = {resid:.6}");
        // Alpha-shift invariance via sigma_ref -> sigma_ref - pi*hbar/L.
        let shift = std::f64::consts::PI * hbar / geom.l_half;
        let op_a = a_minus1_operator(
            &geom,
            hbar,
            rs1.coefficients.g2,
            min1.mu_pp,
            min1.sigma_a - shift,
            64,
        )
        .unwrap();
        let sa = spectrum_lowest(&op_a, 4).unwrap();
        let worst_shift: f64 = sa
            .eigenvalues
            .iter()
            .zip(&sd.eigenvalues)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        println!("  alpha-shift drift = {worst_shift:.2e}");
    }
    println!("total {:?}", t0.elapsed());
}
