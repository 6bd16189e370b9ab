//! Cavity parameters and angle conventions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coupling::CouplingFactors;
use crate::error::{Error, Result};

/// Reduces an angle to `(−π, π]`.
pub fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Rates, detuning, nonlinearity, mismatch and the two coherent drives of a
/// singly resonant cavity.
///
/// Rates may be physical (s⁻¹) or normalized; nothing here assumes `γ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Output-coupling decay rate `γ_c`.
    pub gamma_c: f64,
    /// Scattering and absorption decay rate `γ_s`.
    pub gamma_s: f64,
    /// Detuning `δ` of the fundamental mode.
    pub delta: f64,
    /// Second-order nonlinear strength `ν` (rate per photon).
    pub nu: f64,
    /// Dimensionless mismatch `Δk·L_m`.
    pub dkl: f64,
    pub alpha_in_mod: f64,
    /// Fundamental drive phase `φ`.
    pub alpha_in_phase: f64,
    pub beta_in_mod: f64,
    /// Harmonic drive phase `ϕ`.
    pub beta_in_phase: f64,
}

impl Default for CavityConfig {
    fn default() -> Self {
        Self {
            gamma_c: 1.0,
            gamma_s: 0.0,
            delta: 0.0,
            nu: 1.0,
            dkl: 0.0,
            alpha_in_mod: 0.0,
            alpha_in_phase: 0.0,
            beta_in_mod: 0.0,
            beta_in_phase: 0.0,
        }
    }
}

impl CavityConfig {
    /// Total fundamental decay `γ = γ_c + γ_s`.
    pub fn gamma(&self) -> f64 {
        self.gamma_c + self.gamma_s
    }

    /// Escape efficiency `η = γ_c / γ`.
    pub fn escape_efficiency(&self) -> f64 {
        self.gamma_c / self.gamma()
    }

    /// Checks the invariants and returns a copy with phases reduced to `(−π, π]`.
    pub fn validated(&self) -> Result<Self> {
        let fields = [
            ("gamma_c", self.gamma_c),
            ("gamma_s", self.gamma_s),
            ("delta", self.delta),
            ("nu", self.nu),
            ("dkl", self.dkl),
            ("alpha_in_mod", self.alpha_in_mod),
            ("alpha_in_phase", self.alpha_in_phase),
            ("beta_in_mod", self.beta_in_mod),
            ("beta_in_phase", self.beta_in_phase),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("{name} must be finite")));
        }
        let non_negative = [
            ("gamma_c", self.gamma_c),
            ("gamma_s", self.gamma_s),
            ("nu", self.nu),
            ("alpha_in_mod", self.alpha_in_mod),
            ("beta_in_mod", self.beta_in_mod),
        ];
        if let Some((name, v)) = non_negative.iter().find(|(_, v)| *v < 0.0) {
            return Err(Error::InvalidConfig(format!("{name} = {v} must be >= 0")));
        }
        if self.gamma() <= 0.0 {
            return Err(Error::InvalidConfig(
                "total decay gamma_c + gamma_s must be > 0".into(),
            ));
        }
        Ok(Self {
            alpha_in_phase: reduce_angle(self.alpha_in_phase),
            beta_in_phase: reduce_angle(self.beta_in_phase),
            ..*self
        })
    }

    /// Coupling factors with `μ` and `Γ` scaled by `ν`.
    pub fn coupling(&self) -> CouplingFactors {
        CouplingFactors::new(self.dkl, self.nu)
    }

    /// Harmonic phase used in the phase combinations. Without a harmonic
    /// drive the phase is undefined and defaults to `2φ`.
    pub fn harmonic_phase(&self) -> f64 {
        if self.beta_in_mod == 0.0 {
            reduce_angle(2.0 * self.alpha_in_phase)
        } else {
            self.beta_in_phase
        }
    }

    /// `2φ − ϕ`, the relative phase entering the drive-power relation.
    pub fn drive_phase_difference(&self) -> f64 {
        reduce_angle(2.0 * self.alpha_in_phase - self.harmonic_phase())
    }

    pub fn alpha_in(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_in_mod, self.alpha_in_phase)
    }

    pub fn beta_in(&self) -> Complex64 {
        Complex64::from_polar(self.beta_in_mod, self.beta_in_phase)
    }

    /// Sets the fundamental drive from a complex amplitude.
    pub fn with_alpha_in(self, alpha_in: Complex64) -> Self {
        let (r, p) = alpha_in.to_polar();
        Self {
            alpha_in_mod: r,
            alpha_in_phase: if r == 0.0 { 0.0 } else { p },
            ..self
        }
    }

    /// Sets the harmonic drive from a complex amplitude.
    pub fn with_beta_in(self, beta_in: Complex64) -> Self {
        let (r, p) = beta_in.to_polar();
        Self {
            beta_in_mod: r,
            beta_in_phase: if r == 0.0 { 0.0 } else { p },
            ..self
        }
    }
}
