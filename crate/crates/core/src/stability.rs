//! Linear stability of fixed points and closed-form instability manifolds.
//!
//! Fluctuations `(δa, δa†)` obey a 2×2 drift matrix with eigenvalues
//!
//! ```text
//! λ± = −(γ + 2μn) ± √(|B|² − (δ + 2Γn)²)
//! ```
//!
//! so an instability is always a real eigenvalue crossing zero.

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::coupling::CouplingFactors;
use crate::steady_state::SteadyState;

/// Tolerance for [`reference_instability_check`].
pub const MANIFOLD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    /// Both eigenvalues have negative real part.
    pub stable: bool,
    /// `−max Re λ / γ_t`; positive when stable.
    pub margin: f64,
}

impl StabilityReport {
    /// Eigenvalues from the total decay `γ_t`, the gain modulus `|B|` and the
    /// effective detuning `δ + 2Γn`, all in the same units.
    pub fn from_rates(gamma_t: f64, b_mod: f64, detuning: f64) -> Self {
        let root = Complex64::new(b_mod * b_mod - detuning * detuning, 0.0).sqrt();
        let lambda_plus = -gamma_t + root;
        let lambda_minus = -gamma_t - root;
        let max_re = lambda_plus.re.max(lambda_minus.re);
        Self {
            lambda_plus,
            lambda_minus,
            stable: max_re < 0.0,
            margin: -max_re / gamma_t,
        }
    }

    pub fn max_real_part(&self) -> f64 {
        self.lambda_plus.re.max(self.lambda_minus.re)
    }
}

/// Drift matrix of `(δa, δa†)` around the fixed point `ss`.
pub fn drift_matrix(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> [[Complex64; 2]; 2] {
    let n = ss.n;
    let diag = -Complex64::new(
        cfg.gamma() + 2.0 * cf.mu * n,
        cfg.delta + 2.0 * cf.gamma_cap * n,
    );
    let b = gain(cfg, cf, ss);
    [[diag, b], [b.conj(), diag.conj()]]
}

fn gain(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> Complex64 {
    2.0 * cf.mu.sqrt() * cfg.beta_in() - Complex64::new(cf.mu, cf.gamma_cap) * ss.alpha * ss.alpha
}

/// Drift eigenvalues of a fixed point in rate units.
pub fn eigenvalues(cfg: &CavityConfig, cf: &CouplingFactors, ss: &SteadyState) -> StabilityReport {
    StabilityReport::from_rates(
        cfg.gamma() + 2.0 * cf.mu * ss.n,
        gain(cfg, cf, ss).norm(),
        cfg.delta + 2.0 * cf.gamma_cap * ss.n,
    )
}

/// Turning points of dispersive bistability in hat units,
/// `δ̂± = −2mK_i ± √(m²K_i² − 1)`; `None` below the bistability threshold.
/// Returned as `(δ̂₋, δ̂₊)`.
pub fn kerr_turning_points(m: f64, k_i: f64) -> Option<(f64, f64)> {
    let disc = m * m * k_i * k_i - 1.0;
    real_pair(-2.0 * m * k_i, disc)
}

/// Detunings bounding the SHG-like harmonic instability (no harmonic
/// drive), `δ̂± = −2mK_i ± √(m²(K_i² − 3K_r²) − 4K_r m − 1)`.
pub fn shg_instability_detunings(m: f64, cf: &CouplingFactors) -> Option<(f64, f64)> {
    real_pair(-2.0 * m * cf.k_i, shg_discriminant(m, cf))
}

/// Discriminant of [`shg_instability_detunings`].
pub fn shg_discriminant(m: f64, cf: &CouplingFactors) -> f64 {
    m * m * cf.ki2_minus_3kr2() - 4.0 * cf.k_r * m - 1.0
}

fn real_pair(center: f64, disc: f64) -> Option<(f64, f64)> {
    if disc >= 0.0 {
        let r = disc.sqrt();
        Some((center - r, center + r))
    } else {
        None
    }
}

/// The two real harmonic drives where the phase-matched, zero-detuning
/// system becomes unstable, `1 + 2m = |η_in − m|`: `(−(1 + m), 1 + 3m)`.
pub fn driven_instability_eta(m: f64) -> (f64, f64) {
    (-(1.0 + m), 1.0 + 3.0 * m)
}

/// Whether `(|B̃|, Δ)` lies on the instability manifold `1 + Δ² = |B̃|²`.
pub fn reference_instability_check(b_tilde_mod: f64, delta_big: f64) -> bool {
    let lhs = 1.0 + delta_big * delta_big;
    (lhs - b_tilde_mod * b_tilde_mod).abs() <= MANIFOLD_TOL * lhs
}
