//! Fourier quantization of reduced edge operators on a closed curve.
//!
//! Basis: normalized plane waves `e_m(s) = exp(iπms/L)/√(2L)` on the
//! doubled-arc-length circle `s ∈ [−L, L]`. Multiplication by a sampled
//! profile becomes the Toeplitz matrix of its Fourier coefficients, and the
//! covariant derivative is diagonal, so the whole operator is assembled
//! exactly — no spatial discretization error enters beyond the coefficient
//! transform itself.
//!
//! Mode windows are centered on the momentum minimum: the diagonal part
//! grows quadratically away from the frequency that minimizes
//! `|step·m + offset|`, so low eigenfunctions concentrate near that index
//! `m*` and the retained window is `m ∈ [m* − n_modes, m* + n_modes]`. A
//! window symmetric about `m = 0` would be wasteful (or plain wrong for the
//! symmetric-well operator, whose minimizing index is of order `1/ħ²`).

use std::f64::consts::PI;

use eigcore::{HermitianMatrix, SymmetricMatrix};
use effsymbol::ReducedSymbol;
use geometry::{flux_offsets, CurveGeometry};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, QuantError};

/// Relative imaginary residue below which a coefficient table is treated
/// as real, switching the assembly to the real-symmetric fast path.
const REALNESS_TOL: f64 = 1e-12;

/// Relative cutoff defining the effective bandwidth used when squaring the
/// derivative-coupling Toeplitz matrix. Coefficients of an analytic profile
/// decay geometrically, so the dropped tail is below round-off.
const SQUARE_BAND_TOL: f64 = 1e-16;

/// Guard modes added by [`default_mode_count`] beyond the classically
/// allowed momentum window.
pub const GUARD_MODES: usize = 64;

/// Fourier coefficients of one real sampled profile on the uniform grid
/// `s_j = −L + j·2L/n`. The transform convention matches the plane-wave
/// basis: `f̂(q) = (1/2L)∫ f(s) e^{−iπqs/L} ds ≈ (−1)^q · DFT_q / n`, with
/// the `(−1)^q` phase accounting for the grid starting at `−L` rather than
/// `0`. Coefficients are Hermitian-symmetrized (`ĥ(−q) = conj ĥ(q)`
/// exactly) so the Toeplitz matrices built from them are exactly Hermitian;
/// the size of the symmetrization correction is kept as a diagnostic.
struct ProfileCoefficients {
    /// `ĥ(q)` for `q = 0..=q_max`; negative shifts via conjugation.
    half: Vec<Complex64>,
    /// Worst `|f̂(q) − conj f̂(−q)|` before symmetrization.
    defect: f64,
    /// Worst `|Im ĥ(q)|` over the retained range.
    imag_residue: f64,
    /// Largest retained `|ĥ(q)|`.
    scale: f64,
}

impl ProfileCoefficients {
    fn compute(
        samples: &[f64],
        q_max: usize,
        planner: &mut FftPlanner<f64>,
    ) -> Result<Self, QuantError> {
        let n = samples.len();
        if n < 2 * q_max + 2 {
            return Err(invalid(format!(
                "aliasing: {n} geometry samples cannot resolve Fourier shifts up to ±{q_max}; \
                 resample the curve with at least {} points or reduce the mode count",
                2 * q_max + 2
            )));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(invalid("non-finite profile sample"));
        }
        let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        planner.plan_fft_forward(n).process(&mut buf);

        let raw = |q: i64| -> Complex64 {
            let idx = q.rem_euclid(n as i64) as usize;
            let phase = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            buf[idx] * (phase / n as f64)
        };

        let mut half = Vec::with_capacity(q_max + 1);
        let mut defect = 0.0_f64;
        let mut imag_residue = 0.0_f64;
        let mut scale = f64::MIN_POSITIVE;
        for q in 0..=q_max as i64 {
            let plus = raw(q);
            let minus_conj = raw(-q).conj();
            defect = defect.max((plus - minus_conj).norm());
            let sym = 0.5 * (plus + minus_conj);
            imag_residue = imag_residue.max(sym.im.abs());
            scale = scale.max(sym.norm());
            half.push(sym);
        }
        Ok(ProfileCoefficients {
            half,
            defect,
            imag_residue,
            scale,
        })
    }

    fn is_real(&self) -> bool {
        self.imag_residue <= REALNESS_TOL * self.scale
    }

    fn relative_defect(&self) -> f64 {
        self.defect / self.scale
    }

    fn at(&self, q: i64) -> Complex64 {
        let idx = q.unsigned_abs() as usize;
        if q >= 0 {
            self.half[idx]
        } else {
            self.half[idx].conj()
        }
    }

    /// Real part only — valid on the real fast path, where the Toeplitz
    /// matrix is symmetric and depends on `|q|` alone.
    fn real_at(&self, q: i64) -> f64 {
        self.half[q.unsigned_abs() as usize].re
    }

    /// Largest shift whose coefficient is above the relative square-product
    /// cutoff.
    fn bandwidth(&self) -> usize {
        let total: f64 = self.half[0].norm()
            + 2.0 * self.half[1..].iter().map(|c| c.norm()).sum::<f64>();
        let cutoff = SQUARE_BAND_TOL * total.max(f64::MIN_POSITIVE);
        (0..self.half.len())
            .rev()
            .find(|&q| self.half[q].norm() > cutoff)
            .unwrap_or(0)
    }
}

/// Storage for the assembled operator: real symmetric when every
/// coefficient table is real to round-off (true for mirror-symmetric
/// curves, including all built-in shapes), complex Hermitian otherwise.
#[derive(Clone, Debug)]
pub enum EdgeMatrix {
    Real(SymmetricMatrix),
    Complex(HermitianMatrix),
}

impl EdgeMatrix {
    pub fn order(&self) -> usize {
        match self {
            EdgeMatrix::Real(m) => m.order(),
            EdgeMatrix::Complex(m) => m.order(),
        }
    }
}

/// A quantized edge operator on a finite Fourier window.
#[derive(Clone, Debug)]
pub struct EdgeOperator {
    hbar: f64,
    theta: f64,
    n_modes: usize,
    m_center: i64,
    l_half: f64,
    freq_step: f64,
    freq_offset: f64,
    hermiticity_residual: f64,
    matrix: EdgeMatrix,
}

impl EdgeOperator {
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Half-width of the Fourier window.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Index the window is centered on (the lattice point minimizing the
    /// diagonal frequency magnitude).
    pub fn m_center(&self) -> i64 {
        self.m_center
    }

    pub fn l_half(&self) -> f64 {
        self.l_half
    }

    /// Matrix order `2·n_modes + 1`.
    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn matrix(&self) -> &EdgeMatrix {
        &self.matrix
    }

    pub fn is_real(&self) -> bool {
        matches!(self.matrix, EdgeMatrix::Real(_))
    }

    /// Worst relative Hermiticity defect of the raw coefficient transforms,
    /// before the exact symmetrization that the stored matrix uses.
    pub fn hermiticity_residual(&self) -> f64 {
        self.hermiticity_residual
    }

    /// Diagonal frequency of row `i` (row `0` is mode `m_center − n_modes`).
    pub fn frequency(&self, i: usize) -> f64 {
        let m = self.m_center - self.n_modes as i64 + i as i64;
        self.freq_step * m as f64 + self.freq_offset
    }
}

/// One plain multiplication term `prefactor · Toeplitz(profile)`.
struct PlainTerm<'a> {
    profile: &'a ProfileCoefficients,
    prefactor: f64,
}

/// Everything the window-agnostic assembler needs:
/// `H = half_mu·(D − strength·T_c)² + Σ prefactor·T_plain` with `D`
/// diagonal in `xi`.
struct Assembly<'a> {
    half_mu: f64,
    xi: &'a [f64],
    derivative: Option<(&'a ProfileCoefficients, f64)>,
    plain: Vec<PlainTerm<'a>>,
}

impl Assembly<'_> {
    fn hermiticity_residual(&self) -> f64 {
        let mut worst = self
            .plain
            .iter()
            .map(|t| t.profile.relative_defect())
            .fold(0.0_f64, f64::max);
        if let Some((c, _)) = self.derivative {
            worst = worst.max(c.relative_defect());
        }
        worst
    }

    fn all_real(&self) -> bool {
        self.plain.iter().all(|t| t.profile.is_real())
            && self.derivative.map_or(true, |(c, _)| c.is_real())
    }

    fn build(&self) -> Result<(EdgeMatrix, f64), QuantError> {
        let residual = self.hermiticity_residual();
        let matrix = if self.all_real() {
            EdgeMatrix::Real(self.build_real()?)
        } else {
            EdgeMatrix::Complex(self.build_complex()?)
        };
        Ok((matrix, residual))
    }

    /// Upper triangle computed once and mirrored, so the result is exactly
    /// symmetric entry-for-entry.
    fn build_real(&self) -> Result<SymmetricMatrix, QuantError> {
        let n = self.xi.len();
        let mut entries = vec![0.0_f64; n * n];
        for i in 0..n {
            for j in i..n {
                let q = j as i64 - i as i64;
                let mut v = 0.0;
                if let Some((c, strength)) = self.derivative {
                    v -= self.half_mu * strength * (self.xi[i] + self.xi[j]) * c.real_at(q);
                }
                for term in &self.plain {
                    v += term.prefactor * term.profile.real_at(q);
                }
                if i == j {
                    v += self.half_mu * self.xi[i] * self.xi[i];
                }
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        if let Some((c, strength)) = self.derivative {
            let factor = self.half_mu * strength * strength;
            let band = c.bandwidth();
            for i in 0..n {
                let j_hi = (i + 2 * band).min(n - 1);
                for j in i..=j_hi {
                    let lo = i.max(j).saturating_sub(band);
                    let hi = (i.min(j) + band).min(n - 1);
                    let mut s = 0.0;
                    for l in lo..=hi {
                        s += c.real_at(l as i64 - i as i64) * c.real_at(j as i64 - l as i64);
                    }
                    entries[i * n + j] += factor * s;
                    if j > i {
                        entries[j * n + i] += factor * s;
                    }
                }
            }
        }
        SymmetricMatrix::new(n, entries).map_err(QuantError::from)
    }

    fn build_complex(&self) -> Result<HermitianMatrix, QuantError> {
        let n = self.xi.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let q = j as i64 - i as i64;
                let mut v = Complex64::new(0.0, 0.0);
                if let Some((c, strength)) = self.derivative {
                    v -= c.at(q) * (self.half_mu * strength * (self.xi[i] + self.xi[j]));
                }
                for term in &self.plain {
                    v += term.profile.at(q) * term.prefactor;
                }
                if i == j {
                    v += self.half_mu * self.xi[i] * self.xi[i];
                }
                entries[i * n + j] = v;
                entries[j * n + i] = v.conj();
            }
        }
        if let Some((c, strength)) = self.derivative {
            let factor = self.half_mu * strength * strength;
            let band = c.bandwidth();
            for i in 0..n {
                let j_hi = (i + 2 * band).min(n - 1);
                for j in i..=j_hi {
                    let lo = i.max(j).saturating_sub(band);
                    let hi = (i.min(j) + band).min(n - 1);
                    let mut s = Complex64::new(0.0, 0.0);
                    for l in lo..=hi {
                        s += c.at(l as i64 - i as i64) * c.at(j as i64 - l as i64);
                    }
                    entries[i * n + j] += factor * s;
                    if j > i {
                        entries[j * n + i] += (factor * s).conj();
                    }
                }
            }
        }
        HermitianMatrix::new(n, entries).map_err(QuantError::from)
    }
}

/// Window half-width covering the momentum interval `[σ₋, σ₊]` at lattice
/// spacing `πħ/L`, plus [`GUARD_MODES`] on each side.
pub fn default_mode_count(
    sigma_minus: f64,
    sigma_plus: f64,
    l_half: f64,
    hbar: f64,
) -> Result<usize, QuantError> {
    if !(hbar.is_finite() && hbar > 0.0 && l_half > 0.0 && sigma_plus > sigma_minus) {
        return Err(invalid(
            "mode count needs ħ > 0, L > 0 and a nonempty momentum interval",
        ));
    }
    let width = ((sigma_plus - sigma_minus) * l_half / (PI * hbar)).ceil();
    if width > 1e7 {
        return Err(invalid(format!(
            "momentum window needs {width:.0} modes; refusing to assemble"
        )));
    }
    Ok(width as usize + GUARD_MODES)
}

fn checked_center(raw: f64) -> Result<i64, QuantError> {
    let r = raw.round();
    if !(r.is_finite() && r.abs() < 9.0e15) {
        return Err(invalid("mode window center is not representable"));
    }
    Ok(r as i64)
}

/// Quantize the reduced symbol at semiclassical parameter `ħ` and flux
/// offset `θ`:
///
/// `H = (μ''/2)(ħD_s + θ − σ_a − ħ·c₁(s))² − ħ·lin(s) + ħ²·quad(s)`
///
/// on the Fourier window of half-width `n_modes` centered at the lattice
/// index closest to `(σ_a − θ)L/(πħ)`. The square is expanded exactly on
/// the window (`D² + cross terms + banded Toeplitz square`), so the matrix
/// is Hermitian by construction; profile transforms are Hermitian-
/// symmetrized and the pre-symmetrization defect is kept as a diagnostic.
///
/// Requires the symbol's sample grid to resolve every Fourier shift the
/// window uses: `samples ≥ 4·n_modes + 2`.
pub fn quantize_reduced(
    rs: &ReducedSymbol,
    hbar: f64,
    theta: f64,
    n_modes: usize,
) -> Result<EdgeOperator, QuantError> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(invalid("ħ must be positive and finite"));
    }
    if !theta.is_finite() {
        return Err(invalid("θ must be finite"));
    }
    if n_modes == 0 {
        return Err(invalid("the mode window needs at least one side mode"));
    }
    if !(rs.mu_pp.is_finite() && rs.mu_pp > 0.0) {
        return Err(invalid("band curvature μ'' must be positive"));
    }
    if rs.s_samples.is_empty() {
        return Err(invalid("empty symbol sample grid"));
    }
    let l_half = -rs.s_samples[0];
    if !(l_half.is_finite() && l_half > 0.0) {
        return Err(invalid("symbol grid must start at s = −L with L > 0"));
    }

    let q_max = 2 * n_modes;
    let mut planner = FftPlanner::new();
    let lin = ProfileCoefficients::compute(&rs.lin_samples, q_max, &mut planner)?;
    let c1 = ProfileCoefficients::compute(&rs.c1_samples, q_max, &mut planner)?;
    let quad = ProfileCoefficients::compute(&rs.quad_samples, q_max, &mut planner)?;

    let freq_step = hbar * PI / l_half;
    let freq_offset = theta - rs.sigma_a;
    let m_center = checked_center((rs.sigma_a - theta) * l_half / (PI * hbar))?;

    let size = 2 * n_modes + 1;
    let xi: Vec<f64> = (0..size)
        .map(|i| freq_step * ((m_center - n_modes as i64 + i as i64) as f64) + freq_offset)
        .collect();

    let assembly = Assembly {
        half_mu: 0.5 * rs.mu_pp,
        xi: &xi,
        derivative: Some((&c1, hbar)),
        plain: vec![
            PlainTerm {
                profile: &lin,
                prefactor: -hbar,
            },
            PlainTerm {
                profile: &quad,
                prefactor: hbar * hbar,
            },
        ],
    };
    let (matrix, hermiticity_residual) = assembly.build()?;
    Ok(EdgeOperator {
        hbar,
        theta,
        n_modes,
        m_center,
        l_half,
        freq_step,
        freq_offset,
        hermiticity_residual,
        matrix,
    })
}

/// Quantized symmetric-well operator for the field ratio `−1`:
///
/// `G = (μ''/2)(D_s + α_ħ)² + c₀·k(s)²`
///
/// whose eigenvalues are the second-order spectral coefficients of the full
/// problem (`λ_n(ħ) = β·ħ² + γ_n·ħ⁴ + o(ħ⁴)` with `γ_n` the eigenvalues
/// here). The flux offset `α_ħ = γ₀/ħ² − σ_ref/ħ` is of order `ħ⁻²`, so the
/// Fourier window is centered on the lattice index closest to `−α_ħL/π`;
/// `σ_ref` is the band minimizer supplying the gauge in which the operator
/// is written.
pub fn a_minus1_operator(
    geom: &CurveGeometry,
    hbar: f64,
    c0: f64,
    mu_pp: f64,
    sigma_ref: f64,
    n_modes: usize,
) -> Result<EdgeOperator, QuantError> {
    if !(mu_pp.is_finite() && mu_pp > 0.0) {
        return Err(invalid("band curvature μ'' must be positive"));
    }
    if !c0.is_finite() {
        return Err(invalid("curvature coupling must be finite"));
    }
    if n_modes == 0 {
        return Err(invalid("the mode window needs at least one side mode"));
    }
    let flux = flux_offsets(geom, hbar, sigma_ref)?;

    let q_max = 2 * n_modes;
    let squared: Vec<f64> = geom.k_samples.iter().map(|&k| c0 * k * k).collect();
    let mut planner = FftPlanner::new();
    let profile = ProfileCoefficients::compute(&squared, q_max, &mut planner)?;

    let l_half = geom.l_half;
    let freq_step = PI / l_half;
    let freq_offset = flux.alpha_h;
    let m_center = checked_center(-flux.alpha_h * l_half / PI)?;

    let size = 2 * n_modes + 1;
    let xi: Vec<f64> = (0..size)
        .map(|i| freq_step * ((m_center - n_modes as i64 + i as i64) as f64) + freq_offset)
        .collect();

    let assembly = Assembly {
        half_mu: 0.5 * mu_pp,
        xi: &xi,
        derivative: None,
        plain: vec![PlainTerm {
            profile: &profile,
            prefactor: 1.0,
        }],
    };
    let (matrix, hermiticity_residual) = assembly.build()?;
    Ok(EdgeOperator {
        hbar,
        theta: flux.theta,
        n_modes,
        m_center,
        l_half,
        freq_step,
        freq_offset,
        hermiticity_residual,
        matrix,
    })
}
