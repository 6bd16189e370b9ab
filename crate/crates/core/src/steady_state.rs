//! Classical fixed points of the driven cavity.
//!
//! Stationary amplitudes satisfy
//!
//! ```text
//! 0 = −[γ + iδ + (μ + iΓ)n] α + 2√μ α* β_in + √(2γ_c) α_in,   n = |α|²
//! ```
//!
//! Eliminating the phase gives a quintic in `n`:
//!
//! ```text
//! 0 = n Q(n)² − 2γ_c|α_in|² R(n)
//! Q(n) = (γ+μn)² + (δ+Γn)² − 4μ|β_in|²
//! R(n) = (γ+μn)² + (δ+Γn)² + 4μ|β_in|² + 4√μ|β_in| [(γ+μn) cos ψ + (δ+Γn) sin ψ]
//! ```
//!
//! with `ψ = 2φ − ϕ`. `R(n) = |γ+μn − i(δ+Γn) + 2√μ|β_in| e^{−iψ}|²` is a
//! squared modulus, so the inverse map `n ↦ |α_in|²` only fails where it
//! vanishes.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::config::{reduce_angle, CavityConfig};
use crate::coupling::CouplingFactors;
use crate::error::{Error, Result};

/// Imaginary parts below `IMAG_TOL·(1 + |Re|)` count as real roots.
const IMAG_TOL: f64 = 1e-7;
/// Roots closer than `DEDUP_TOL·(1 + n)` are merged.
const DEDUP_TOL: f64 = 1e-9;
/// Maximum accepted relative residual of a polished root.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// `cos² + sin²` must be within this of 1 for `n` to count as a fixed point.
const PHASE_NORM_TOL: f64 = 1e-6;

/// A stationary solution of the mean-field equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    /// Intracavity photon number `n = |α|²`.
    pub n: f64,
    /// Intracavity phase `θ` in `(−π, π]`.
    pub theta: f64,
    pub alpha: Complex64,
    /// Relative residual of the unexpanded quintic at `n`.
    pub residual: f64,
}

impl SteadyState {
    pub fn from_alpha(alpha: Complex64) -> Self {
        Self {
            n: alpha.norm_sqr(),
            theta: alpha.arg(),
            alpha,
            residual: 0.0,
        }
    }
}

/// Quantities shared by the quintic, its inverse and the phase recovery.
struct Terms {
    gamma: f64,
    delta: f64,
    mu: f64,
    gamma_cap: f64,
    /// `2√μ |β_in|`
    c: f64,
    /// `2γ_c |α_in|²`
    drive: f64,
    cos_psi: f64,
    sin_psi: f64,
}

impl Terms {
    fn new(cfg: &CavityConfig, cf: &CouplingFactors) -> Self {
        Self::with_phase(cfg, cf, cfg.drive_phase_difference())
    }

    fn with_phase(cfg: &CavityConfig, cf: &CouplingFactors, psi: f64) -> Self {
        Self {
            gamma: cfg.gamma(),
            delta: cfg.delta,
            mu: cf.mu,
            gamma_cap: cf.gamma_cap,
            c: 2.0 * cf.mu.max(0.0).sqrt() * cfg.beta_in_mod,
            drive: 2.0 * cfg.gamma_c * cfg.alpha_in_mod * cfg.alpha_in_mod,
            cos_psi: psi.cos(),
            sin_psi: psi.sin(),
        }
    }

    fn loss(&self, n: f64) -> f64 {
        self.gamma + self.mu * n
    }

    fn detuning(&self, n: f64) -> f64 {
        self.delta + self.gamma_cap * n
    }

    /// Common denominator of the phase equations.
    fn q(&self, n: f64) -> f64 {
        let (g, d) = (self.loss(n), self.detuning(n));
        g * g + d * d - self.c * self.c
    }

    /// Drive-power denominator.
    fn r(&self, n: f64) -> f64 {
        let (g, d) = (self.loss(n), self.detuning(n));
        g * g + d * d + self.c * self.c + 2.0 * self.c * (g * self.cos_psi + d * self.sin_psi)
    }

    /// Sum of term magnitudes, the scale against which residuals are judged.
    fn r_scale(&self, n: f64) -> f64 {
        let (g, d) = (self.loss(n), self.detuning(n));
        g * g + d * d + self.c * self.c + 2.0 * self.c * (g * self.cos_psi).abs()
            + 2.0 * self.c * (d * self.sin_psi).abs()
    }

    fn quintic(&self, n: f64) -> f64 {
        let q = self.q(n);
        n * q * q - self.drive * self.r(n)
    }

    fn scale(&self, n: f64) -> f64 {
        let (g, d) = (self.loss(n), self.detuning(n));
        let q = g * g + d * d + self.c * self.c;
        n.abs() * q * q + self.drive * self.r_scale(n)
    }

    fn coefficients(&self) -> [f64; 6] {
        let q2 = self.mu * self.mu + self.gamma_cap * self.gamma_cap;
        let q1 = 2.0 * (self.gamma * self.mu + self.delta * self.gamma_cap);
        let base = self.gamma * self.gamma + self.delta * self.delta;
        let c2 = self.c * self.c;
        let q0 = base - c2;
        let r1 = q1 + 2.0 * self.c * (self.mu * self.cos_psi + self.gamma_cap * self.sin_psi);
        let r0 = base + c2 + 2.0 * self.c * (self.gamma * self.cos_psi + self.delta * self.sin_psi);
        [
            -self.drive * r0,
            q0 * q0 - self.drive * r1,
            2.0 * q1 * q0 - self.drive * q2,
            q1 * q1 + 2.0 * q2 * q0,
            2.0 * q2 * q1,
            q2 * q2,
        ]
    }
}

/// Coefficients `c_0..c_5` (ascending powers of `n`) of the steady-state quintic.
pub fn quintic_coefficients(cfg: &CavityConfig, cf: &CouplingFactors) -> [f64; 6] {
    Terms::new(cfg, cf).coefficients()
}

/// The quintic evaluated in its unexpanded form.
pub fn quintic_residual(cfg: &CavityConfig, cf: &CouplingFactors, n: f64) -> f64 {
    Terms::new(cfg, cf).quintic(n)
}

/// Residual of the unexpanded quintic divided by the magnitude of its terms.
pub fn relative_residual(cfg: &CavityConfig, cf: &CouplingFactors, n: f64) -> f64 {
    let t = Terms::new(cfg, cf);
    let scale = t.scale(n);
    if scale == 0.0 {
        0.0
    } else {
        t.quintic(n).abs() / scale
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn evaluate_polynomial(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
}

fn horner_derivative(c: &[f64], x: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &ck)| acc * x + k as f64 * ck)
}

/// Roots of a real polynomial (ascending coefficients, nonzero leading term)
/// from the eigenvalues of its companion matrix.
fn companion_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    // Rescale the variable so the roots are O(1).
    let scale = (0..degree)
        .filter(|&k| coeffs[k] != 0.0)
        .map(|k| (coeffs[k] / lead).abs().powf(1.0 / (degree - k) as f64))
        .fold(0.0_f64, f64::max);
    let scale = if scale > 0.0 && scale.is_finite() { scale } else { 1.0 };
    if degree == 1 {
        return vec![Complex64::new(-coeffs[0] / lead, 0.0)];
    }
    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for k in 0..degree {
        companion[(k, degree - 1)] = -coeffs[k] * scale.powi(k as i32) / (lead * scale.powi(degree as i32));
    }
    companion
        .complex_eigenvalues()
        .iter()
        .map(|z| Complex64::new(z.re * scale, z.im * scale))
        .collect()
}

/// All admissible photon numbers `n ≥ 0` for the configured drives, sorted
/// ascending.
///
/// Roots come from the companion matrix of the expanded quintic and are then
/// polished with Newton steps on the unexpanded form.
pub fn solve_n(cfg: &CavityConfig, cf: &CouplingFactors) -> Result<Vec<f64>> {
    let terms = Terms::new(cfg, cf);
    let full = terms.coefficients();
    let degree = match full.iter().rposition(|&c| c != 0.0) {
        Some(d) => d,
        None => return Err(Error::RootFinding { coefficients: full.to_vec() }),
    };
    if degree == 0 {
        // Constant nonzero polynomial: no roots.
        return Err(Error::RootFinding { coefficients: full.to_vec() });
    }
    let coeffs = &full[..=degree];
    let raw = companion_roots(coeffs);
    if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::RootFinding { coefficients: full.to_vec() });
    }
    let magnitude = raw.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    let clamp_tol = 1e-9 * magnitude.max(f64::MIN_POSITIVE);

    let mut roots = Vec::new();
    for z in raw {
        if z.im.abs() >= IMAG_TOL * (magnitude.max(1e-300) + z.re.abs()) {
            continue;
        }
        let polished = polish(&terms, coeffs, z.re);
        let n = if polished < 0.0 {
            if polished >= -clamp_tol {
                0.0
            } else {
                continue;
            }
        } else {
            polished
        };
        let scale = terms.scale(n);
        let res = if scale == 0.0 { 0.0 } else { terms.quintic(n).abs() / scale };
        if res <= RESIDUAL_TOL {
            roots.push(n);
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|b, a| (*b - *a).abs() < DEDUP_TOL * (1.0 + a.abs()));
    if roots.is_empty() && cfg.alpha_in_mod > 0.0 {
        return Err(Error::RootFinding { coefficients: full.to_vec() });
    }
    Ok(roots)
}

fn polish(terms: &Terms, coeffs: &[f64], start: f64) -> f64 {
    let mut x = start;
    let mut best = (terms.quintic(x).abs(), x);
    for _ in 0..60 {
        let f = terms.quintic(x);
        let df = horner_derivative(coeffs, x);
        if f == 0.0 || df == 0.0 || !df.is_finite() {
            break;
        }
        let step = f / df;
        x -= step;
        let r = terms.quintic(x).abs();
        if r < best.0 {
            best = (r, x);
        }
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    best.1
}

/// `|α_in|²` that makes `n` a fixed point, for a given relative drive
/// phase `2φ − ϕ`.
pub fn input_power_for_n(
    cfg: &CavityConfig,
    cf: &CouplingFactors,
    n: f64,
    drive_phase_difference: f64,
) -> Result<f64> {
    if n < 0.0 || !n.is_finite() {
        return Err(Error::InvalidConfig(format!("photon number {n} must be finite and >= 0")));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    if cfg.gamma_c <= 0.0 {
        return Err(Error::InvalidConfig(
            "gamma_c = 0: the cavity cannot be driven through the coupler".into(),
        ));
    }
    let t = Terms::with_phase(cfg, cf, drive_phase_difference);
    let den = t.r(n);
    if den.is_nan() || den <= 1e-14 * t.r_scale(n) {
        return Err(Error::Infeasible { n, denominator: den });
    }
    let q = t.q(n);
    let rhs = n * q * q / den;
    Ok(rhs / (2.0 * cfg.gamma_c))
}

/// Intracavity phase `θ` of the fixed point with photon number `n`.
pub fn recover_theta(cfg: &CavityConfig, cf: &CouplingFactors, n: f64) -> Result<f64> {
    let (cos, sin) = phase_components(cfg, cf, n)?;
    let norm = cos * cos + sin * sin;
    if (norm - 1.0).abs() > PHASE_NORM_TOL {
        return Err(Error::NotAFixedPoint { n, norm });
    }
    Ok(reduce_angle(0.5 * cfg.harmonic_phase() + sin.atan2(cos)))
}

/// `(cos(θ − ϕ/2), sin(θ − ϕ/2))` from the real and imaginary parts of the
/// state equation. Their squares sum to 1 exactly at a fixed point.
pub fn phase_components(cfg: &CavityConfig, cf: &CouplingFactors, n: f64) -> Result<(f64, f64)> {
    if n.is_nan() || n <= 0.0 {
        return Err(Error::DegeneratePhase { n, denominator: 0.0 });
    }
    let t = Terms::new(cfg, cf);
    let q = t.q(n);
    let (g, d) = (t.loss(n), t.detuning(n));
    let size = g * g + d * d + t.c * t.c;
    if q.abs() <= 1e-12 * size {
        return Err(Error::DegeneratePhase { n, denominator: q });
    }
    let psi = cfg.alpha_in_phase - 0.5 * cfg.harmonic_phase();
    let (sp, cp) = psi.sin_cos();
    let amp = cfg.alpha_in_mod / n.sqrt() * (2.0 * cfg.gamma_c).sqrt() / q;
    let cos = amp * ((g + t.c) * cp + d * sp);
    let sin = amp * ((g - t.c) * sp - d * cp);
    Ok((cos, sin))
}

/// Every fixed point of the configuration, with phases.
///
/// Without a fundamental drive the phase equations degenerate at the
/// parametric-oscillation roots; their phase then follows from
/// `e^{2iθ} = 2√μ β_in / L`.
pub fn fixed_points(cfg: &CavityConfig) -> Result<Vec<SteadyState>> {
    let cfg = cfg.validated()?;
    let cf = cfg.coupling();
    let mut out = Vec::new();
    for n in solve_n(&cfg, &cf)? {
        let theta = if n == 0.0 {
            0.0
        } else if cfg.alpha_in_mod == 0.0 {
            let l = Complex64::new(cfg.gamma() + cf.mu * n, cfg.delta + cf.gamma_cap * n);
            let gain = 2.0 * cf.mu.sqrt() * cfg.beta_in() / l;
            0.5 * gain.arg()
        } else {
            recover_theta(&cfg, &cf, n)?
        };
        out.push(SteadyState {
            n,
            theta,
            alpha: Complex64::from_polar(n.sqrt(), theta),
            residual: relative_residual(&cfg, &cf, n),
        });
    }
    Ok(out)
}

/// Right-hand side of the classical mean-field equation, `dα/dt`.
pub fn classical_drift(cfg: &CavityConfig, cf: &CouplingFactors, alpha: Complex64) -> Complex64 {
    let n = alpha.norm_sqr();
    let l = Complex64::new(cfg.gamma() + cf.mu * n, cfg.delta + cf.gamma_cap * n);
    -l * alpha
        + 2.0 * cf.mu.sqrt() * alpha.conj() * cfg.beta_in()
        + (2.0 * cfg.gamma_c).sqrt() * cfg.alpha_in()
}

/// Fundamental drive `α_in` that holds the cavity at amplitude `alpha`
/// given the harmonic drive already in `cfg`.
pub fn drive_for_state(cfg: &CavityConfig, cf: &CouplingFactors, alpha: Complex64) -> Result<Complex64> {
    if cfg.gamma_c <= 0.0 {
        return Err(Error::InvalidConfig(
            "gamma_c = 0: the cavity cannot be driven through the coupler".into(),
        ));
    }
    let n = alpha.norm_sqr();
    let l = Complex64::new(cfg.gamma() + cf.mu * n, cfg.delta + cf.gamma_cap * n);
    Ok((l * alpha - 2.0 * cf.mu.sqrt() * alpha.conj() * cfg.beta_in()) / (2.0 * cfg.gamma_c).sqrt())
}
