//! Effective parametric gain and the two dimensionless parameterizations.
//!
//! * tilde: rates divided by the total decay `γ_t = γ + 2μn`, which exposes
//!   the split of `γ_t` into coupling, nonlinear and scattering channels;
//! * hat: rates divided by `γ`, photon number as `m = νn/γ` and the
//!   harmonic drive as `η_in`, normalized to the parametric-oscillation
//!   threshold.

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::coupling::{coupling_factors, CouplingFactors};
use crate::error::{Error, Result};
use crate::stability::StabilityReport;
use crate::steady_state::{drive_for_state, input_power_for_n, SteadyState};

/// The parametric coefficient `B = 2√μ β_in − (μ + iΓ)α²` in each
/// normalization, and the generalized detuning `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveGain {
    pub b_raw: Complex64,
    pub b_tilde: Complex64,
    /// `√K_r η_in − (K_r + iK_i) m`; equals `b_raw e^{−2iθ}/γ`.
    pub b_hat: Complex64,
    /// `Δ = (δ + 2Γn)/γ_t`.
    pub delta_big: f64,
}

impl EffectiveGain {
    pub fn new(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> Self {
        let np = NormalizedParams::new(cfg, cf, ss);
        let b_raw = 2.0 * cf.mu.sqrt() * cfg.beta_in()
            - Complex64::new(cf.mu, cf.gamma_cap) * ss.alpha * ss.alpha;
        let b_hat = cf.k_r.sqrt() * np.eta_in - Complex64::new(cf.k_r, cf.k_i) * np.m;
        Self {
            b_raw,
            b_tilde: b_raw / np.gamma_t,
            b_hat,
            delta_big: (cfg.delta + 2.0 * cf.gamma_cap * ss.n) / np.gamma_t,
        }
    }
}

/// Dimensionless parameters of a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedParams {
    /// `m = νn/γ`.
    pub m: f64,
    /// `η_in = (2√ν/γ) β_in e^{−2iθ}`.
    pub eta_in: Complex64,
    /// Escape efficiency `γ_c/(γ_c + γ_s)`.
    pub eta: f64,
    /// `γ_nl = 2μn`.
    pub gamma_nl: f64,
    /// `γ_t = γ + γ_nl`.
    pub gamma_t: f64,
    pub gamma_tilde_c: f64,
    pub gamma_tilde_nl: f64,
    pub gamma_tilde_s: f64,
}

impl NormalizedParams {
    pub fn new(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> Self {
        let gamma = cfg.gamma();
        let gamma_nl = 2.0 * cf.mu * ss.n;
        let gamma_t = gamma + gamma_nl;
        Self {
            m: cfg.nu * ss.n / gamma,
            eta_in: 2.0 * cfg.nu.sqrt() / gamma
                * cfg.beta_in()
                * Complex64::from_polar(1.0, -2.0 * ss.theta),
            eta: cfg.gamma_c / gamma,
            gamma_nl,
            gamma_t,
            gamma_tilde_c: cfg.gamma_c / gamma_t,
            gamma_tilde_nl: gamma_nl / gamma_t,
            gamma_tilde_s: cfg.gamma_s / gamma_t,
        }
    }

    /// `γ̃_c + γ̃_nl + γ̃_s`, which is 1 up to rounding.
    pub fn channel_sum(&self) -> f64 {
        self.gamma_tilde_c + self.gamma_tilde_nl + self.gamma_tilde_s
    }
}

/// An operating point in hat units (time in units of `1/γ`).
///
/// This is how the optimum paths are parameterized: the photon number is a
/// free coordinate and the drives that realize it are reconstructed
/// afterwards with [`HatPoint::realize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatPoint {
    /// `m = νn/γ`.
    pub m: f64,
    /// Normalized harmonic drive, referenced to the intracavity phase.
    pub eta_in: Complex64,
    /// `δ̂ = δ/γ`.
    pub delta_hat: f64,
    /// Mismatch `Δk·L_m`.
    pub dkl: f64,
    pub k_r: f64,
    pub k_i: f64,
    /// `γ̂_c = γ_c/γ`, the escape efficiency.
    pub gamma_hat_c: f64,
}

impl HatPoint {
    pub fn new(m: f64, eta_in: Complex64, delta_hat: f64, dkl: f64, eta: f64) -> Self {
        let cf = coupling_factors(dkl);
        Self {
            m,
            eta_in,
            delta_hat,
            dkl,
            k_r: cf.k_r,
            k_i: cf.k_i,
            gamma_hat_c: eta,
        }
    }

    /// Operating point with real harmonic drive `eta_in`.
    pub fn real_drive(m: f64, eta_in: f64, delta_hat: f64, dkl: f64, eta: f64) -> Self {
        Self::new(m, Complex64::new(eta_in, 0.0), delta_hat, dkl, eta)
    }

    pub fn coupling(&self) -> CouplingFactors {
        CouplingFactors::from_parts(self.k_r, self.k_i)
    }

    /// `1 + 2K_r m`, the total decay in units of `γ`.
    pub fn total_decay(&self) -> f64 {
        1.0 + 2.0 * self.k_r * self.m
    }

    /// `δ̂ + 2K_i m`.
    pub fn detuning(&self) -> f64 {
        self.delta_hat + 2.0 * self.k_i * self.m
    }

    /// `B̂ = √K_r η_in − (K_r + iK_i) m`.
    pub fn b_hat(&self) -> Complex64 {
        self.k_r.sqrt() * self.eta_in - Complex64::new(self.k_r, self.k_i) * self.m
    }

    /// `|B̃| = |B̂| / (1 + 2K_r m)`.
    pub fn b_tilde_mod(&self) -> f64 {
        self.b_hat().norm() / self.total_decay()
    }

    /// Generalized detuning `Δ`.
    pub fn delta_big(&self) -> f64 {
        self.detuning() / self.total_decay()
    }

    pub fn gamma_tilde_c(&self) -> f64 {
        self.gamma_hat_c / self.total_decay()
    }

    pub fn gamma_tilde_nl(&self) -> f64 {
        2.0 * self.k_r * self.m / self.total_decay()
    }

    pub fn gamma_tilde_s(&self) -> f64 {
        (1.0 - self.gamma_hat_c) / self.total_decay()
    }

    /// Drift eigenvalues in units of `γ`.
    pub fn stability(&self) -> StabilityReport {
        StabilityReport::from_rates(self.total_decay(), self.b_hat().norm(), self.detuning())
    }

    /// Builds a physical configuration (`γ = ν = 1`, `θ = 0`) whose fixed
    /// point is this operating point, and checks it through the inverse
    /// drive-power map.
    pub fn realize(&self) -> Result<(CavityConfig, SteadyState)> {
        if self.m.is_nan() || self.m < 0.0 {
            return Err(Error::InvalidConfig(format!("m = {} must be >= 0", self.m)));
        }
        let base = CavityConfig {
            gamma_c: self.gamma_hat_c,
            gamma_s: 1.0 - self.gamma_hat_c,
            delta: self.delta_hat,
            nu: 1.0,
            dkl: self.dkl,
            ..Default::default()
        }
        .with_beta_in(0.5 * self.eta_in);
        let cf = base.coupling();
        let alpha = Complex64::new(self.m.sqrt(), 0.0);
        let drive = drive_for_state(&base, &cf, alpha)?;
        let cfg = base.with_alpha_in(drive).validated()?;
        let power = input_power_for_n(&cfg, &cf, self.m, cfg.drive_phase_difference())?;
        let want = drive.norm_sqr();
        if (power - want).abs() > 1e-8 * want.max(1e-300) {
            return Err(Error::Infeasible {
                n: self.m,
                denominator: f64::NAN,
            });
        }
        Ok((cfg, SteadyState::from_alpha(alpha)))
    }
}
