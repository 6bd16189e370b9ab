//! Squeezing and stretching spectra of the output fields.
//!
//! Both outputs share one frequency response; they differ only in the
//! prefactor (`4γ_c` for the fundamental, `8μn` for the harmonic):
//!
//! ```text
//! S_∓(ω) = 1 + P |B| N_∓ / D
//! N_∓ = 2|B|γ_t ∓ √([γ_t² − d² + |B|² + ω²]² + 4γ_t² d²)
//! D   = [γ_t² + d² − |B|² − ω²]² + 4γ_t² ω²,      d = δ + 2Γn
//! ```
//!
//! The squeezing branch is computed as `1 − P|B| / (2|B|γ_t + √…)`, an exact
//! rewrite that does not divide by `D`.

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::coupling::CouplingFactors;
use crate::error::{Error, Result};
use crate::normalize::HatPoint;
use crate::reference::{reference_spectrum, ChannelSet};
use crate::stability::eigenvalues;
use crate::steady_state::SteadyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Rates in the units of the configuration.
    Raw,
    /// Rates divided by `γ`.
    Hat,
    /// Rates divided by `γ_t`.
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fundamental,
    Harmonic,
}

/// One spectral sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumResult {
    pub normalization: Normalization,
    pub mode: Mode,
    /// Frequency in the units of `normalization`.
    pub omega: f64,
    pub s_minus: f64,
    /// `f64::INFINITY` at a divergence.
    pub s_plus: f64,
    /// Optimal quadrature phase; `None` when the correlation vanishes.
    pub theta_m: Option<f64>,
    /// The stretching spectrum diverges at this frequency.
    pub divergent: bool,
    /// The fixed point is unstable; values are not physical.
    pub unstable: bool,
}

/// Shared frequency response. Returns `(S_−, S_+, divergent)`.
fn quadrature_noise(prefactor: f64, b: f64, gamma_t: f64, d: f64, omega: f64) -> (f64, f64, bool) {
    if b == 0.0 || prefactor == 0.0 {
        return (1.0, 1.0, false);
    }
    let t2 = gamma_t * gamma_t;
    let w = omega * omega;
    let s = ((t2 - d * d + b * b + w).powi(2) + 4.0 * t2 * d * d).sqrt();
    let core = (gamma_t - b) * (gamma_t + b) + d * d - w;
    let den = core * core + 4.0 * t2 * w;
    let minus = 1.0 - prefactor * b / (2.0 * b * gamma_t + s);
    let scale = t2 + d * d + b * b + w;
    if den <= 1e-28 * scale * scale {
        (minus, f64::INFINITY, true)
    } else {
        (minus, 1.0 + prefactor * b * (2.0 * b * gamma_t + s) / den, false)
    }
}

/// `ω² + |B|² + γ_t² − d² − 2iγ_t d`, the frequency-dependent factor of the
/// output correlations `⟨δa_out(ω) δa_out(−ω)⟩`.
fn correlation_factor(b: f64, gamma_t: f64, d: f64, omega: f64) -> Complex64 {
    Complex64::new(
        omega * omega + b * b + gamma_t * gamma_t - d * d,
        -2.0 * gamma_t * d,
    )
}

/// `θ_m = (ν − π)/2` with `ν` the phase of the correlation.
fn phase_from_correlation(corr: Complex64) -> Option<f64> {
    if corr.norm() == 0.0 {
        None
    } else {
        Some(0.5 * (corr.arg() - std::f64::consts::PI))
    }
}

/// Fundamental and harmonic spectra of a fixed point at frequency `omega`
/// (rate units).
pub fn raw_spectra(
    cfg: &CavityConfig,
    cf: &CouplingFactors,
    ss: &SteadyState,
    omega: f64,
) -> (SpectrumResult, SpectrumResult) {
    let n = ss.n;
    let gamma_t = cfg.gamma() + 2.0 * cf.mu * n;
    let d = cfg.delta + 2.0 * cf.gamma_cap * n;
    let b = gain(cfg, cf, ss);
    let unstable = !eigenvalues(cfg, cf, ss).stable;
    let mk = |mode, prefactor: f64| {
        let (s_minus, s_plus, divergent) = quadrature_noise(prefactor, b.norm(), gamma_t, d, omega);
        SpectrumResult {
            normalization: Normalization::Raw,
            mode,
            omega,
            s_minus,
            s_plus,
            theta_m: squeezing_phase(cfg, cf, ss, omega, mode).ok(),
            divergent,
            unstable,
        }
    };
    (
        mk(Mode::Fundamental, 4.0 * cfg.gamma_c),
        mk(Mode::Harmonic, 8.0 * cf.mu * n),
    )
}

fn gain(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> Complex64 {
    2.0 * cf.mu.sqrt() * cfg.beta_in() - Complex64::new(cf.mu, cf.gamma_cap) * ss.alpha * ss.alpha
}

/// Optimal quadrature phase of the given output at frequency `omega`.
///
/// Quadrature phases are defined modulo π.
pub fn squeezing_phase(
    cfg: &CavityConfig,
    cf: &CouplingFactors,
    ss: &SteadyState,
    omega: f64,
    mode: Mode,
) -> Result<f64> {
    let n = ss.n;
    let gamma_t = cfg.gamma() + 2.0 * cf.mu * n;
    let d = cfg.delta + 2.0 * cf.gamma_cap * n;
    let b = gain(cfg, cf, ss);
    let factor = correlation_factor(b.norm(), gamma_t, d, omega);
    let corr = match mode {
        Mode::Fundamental if cfg.gamma_c > 0.0 => b * factor,
        Mode::Harmonic if cf.mu > 0.0 => ss.alpha * ss.alpha * b * factor,
        _ => Complex64::new(0.0, 0.0),
    };
    phase_from_correlation(corr).ok_or(Error::UndefinedPhase)
}

/// Fundamental and harmonic spectra of a hat-unit operating point at
/// `omega_hat = ω/γ`. Squeezing phases are referenced to an intracavity
/// field with `θ = 0`.
pub fn hat_spectra(p: &HatPoint, omega_hat: f64) -> (SpectrumResult, SpectrumResult) {
    let gamma_t = p.total_decay();
    let d = p.detuning();
    let b = p.b_hat();
    let unstable = !p.stability().stable;
    let corr = b * correlation_factor(b.norm(), gamma_t, d, omega_hat);
    let mk = |mode, prefactor: f64| {
        let (s_minus, s_plus, divergent) = quadrature_noise(prefactor, b.norm(), gamma_t, d, omega_hat);
        let theta_m = if prefactor == 0.0 { None } else { phase_from_correlation(corr) };
        SpectrumResult {
            normalization: Normalization::Hat,
            mode,
            omega: omega_hat,
            s_minus,
            s_plus,
            theta_m,
            divergent,
            unstable,
        }
    };
    (
        mk(Mode::Fundamental, 4.0 * p.gamma_hat_c),
        mk(Mode::Harmonic, 8.0 * p.k_r * p.m),
    )
}

/// Spectra from the channel decomposition, `1 + γ̃_n :S_ref:`, at
/// `omega_tilde = ω/γ_t`.
pub fn tilde_spectra(p: &HatPoint, omega_tilde: f64) -> Result<(SpectrumResult, SpectrumResult)> {
    let channels = ChannelSet::standard(
        p.gamma_tilde_c(),
        p.gamma_tilde_nl(),
        p.gamma_tilde_s(),
    )?;
    let s_ref = reference_spectrum(p.b_tilde_mod(), p.delta_big(), omega_tilde);
    let unstable = !p.stability().stable;
    let mk = |mode, name| -> Result<SpectrumResult> {
        let s = channels.spectrum(name, s_ref)?;
        Ok(SpectrumResult {
            normalization: Normalization::Tilde,
            mode,
            omega: omega_tilde,
            s_minus: s.minus,
            s_plus: s.plus,
            theta_m: None,
            divergent: s.is_divergent(),
            unstable,
        })
    };
    Ok((
        mk(Mode::Fundamental, ChannelSet::COUPLING)?,
        mk(Mode::Harmonic, ChannelSet::NONLINEAR)?,
    ))
}

/// Static squeezing bound of the harmonic output, `1/(1 + 2mK_r)`.
pub fn s_m_bound(m: f64, k_r: f64) -> f64 {
    1.0 / (1.0 + 2.0 * m * k_r)
}

/// Spectrum after a beam splitter of transmissivity `t`:
/// `1 + T :S_in:`.
pub fn loss_degraded(s_in_normal_ordered: f64, transmissivity: f64) -> f64 {
    1.0 + transmissivity * s_in_normal_ordered
}

/// Harmonic output power `|η_in − 2m|²`, in units where the undriven
/// phase-matched SHG output is `(2m)²`.
pub fn harmonic_output_power(m: f64, eta_in: Complex64) -> f64 {
    (eta_in - 2.0 * m).norm_sqr()
}

/// Frequency grid: `0` followed by `samples` log-spaced points on
/// `[1e−3, 10]·gamma_t`.
pub fn default_omega_grid(gamma_t: f64, samples: usize) -> Vec<f64> {
    let mut grid = vec![0.0];
    let (lo, hi) = (1e-3_f64.ln(), 10f64.ln());
    for i in 0..samples {
        let f = if samples == 1 { 0.0 } else { i as f64 / (samples - 1) as f64 };
        grid.push(gamma_t * (lo + f * (hi - lo)).exp());
    }
    grid
}
