//! Mismatch-dependent coupling factors for a plane-wave geometry.
//!
//! With `x = Δk·L_m` the complex overlap factor splits into
//!
//! ```text
//! K_r = sinc²(x/2)
//! K_i = (2/x) [sinc(x/2) cos(x/2) − 1] = 2 (sin x − x) / x²
//! ```
//!
//! `K_r` scales the nonlinear absorption (up-conversion) rate and `K_i` the
//! cascaded, Kerr-like nonlinear dispersion.

/// Below this |x| the imaginary part is evaluated from its Taylor series.
/// The closed form loses about `1e-16 / x²` relative accuracy to
/// cancellation in `sin x − x`.
pub const KI_SERIES_THRESHOLD: f64 = 0.5;

/// Below this |x| the real part is evaluated from its Taylor series.
pub const KR_SERIES_THRESHOLD: f64 = 1e-4;

/// Coupling factors `(K_r, K_i)` and the rates `μ = ν K_r`, `Γ = ν K_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingFactors {
    pub k_r: f64,
    pub k_i: f64,
    /// Nonlinear absorption rate `μ`.
    pub mu: f64,
    /// Nonlinear dispersion rate `Γ`.
    pub gamma_cap: f64,
}

impl CouplingFactors {
    /// Builds the factors for a given mismatch and nonlinear strength `nu`.
    pub fn new(dkl: f64, nu: f64) -> Self {
        coupling_factors(dkl).with_strength(nu)
    }

    /// Fills `μ` and `Γ` from the nonlinear strength.
    pub fn with_strength(self, nu: f64) -> Self {
        Self {
            mu: nu * self.k_r,
            gamma_cap: nu * self.k_i,
            ..self
        }
    }

    /// Factors with prescribed `(K_r, K_i)` and unit strength; handy for
    /// normalized studies that never pass through a mismatch value.
    pub fn from_parts(k_r: f64, k_i: f64) -> Self {
        Self {
            k_r,
            k_i,
            mu: k_r,
            gamma_cap: k_i,
        }
    }

    /// `K_i² − 3 K_r²`.
    pub fn ki2_minus_3kr2(&self) -> f64 {
        self.k_i * self.k_i - 3.0 * self.k_r * self.k_r
    }
}

/// Coupling factors for mismatch `x = Δk·L_m`, with unit nonlinear strength
/// (so `mu == k_r` and `gamma_cap == k_i`). Use [`CouplingFactors::with_strength`]
/// to scale by `ν`.
pub fn coupling_factors(dkl: f64) -> CouplingFactors {
    CouplingFactors::from_parts(k_real(dkl), k_imag(dkl))
}

/// `K_r(x) = sinc²(x/2)`.
pub fn k_real(x: f64) -> f64 {
    if x.abs() < KR_SERIES_THRESHOLD {
        k_real_series(x)
    } else {
        k_real_direct(x)
    }
}

/// `K_i(x) = (2/x)[sinc(x/2) cos(x/2) − 1]`.
pub fn k_imag(x: f64) -> f64 {
    if x.abs() < KI_SERIES_THRESHOLD {
        k_imag_series(x)
    } else {
        k_imag_direct(x)
    }
}

/// `K_i² − 3 K_r²` as a function of the mismatch. Positive values are
/// needed for a real pair of SHG-like instability detunings.
pub fn ki2_minus_3kr2(dkl: f64) -> f64 {
    coupling_factors(dkl).ki2_minus_3kr2()
}

pub(crate) fn k_real_direct(x: f64) -> f64 {
    let u = 0.5 * x;
    let s = u.sin() / u;
    s * s
}

pub(crate) fn k_imag_direct(x: f64) -> f64 {
    let u = 0.5 * x;
    let sinc = u.sin() / u;
    (2.0 / x) * (sinc * u.cos() - 1.0)
}

pub(crate) fn k_real_series(x: f64) -> f64 {
    // sinc²(x/2) = 1 − x²/12 + x⁴/360 − x⁶/20160 + ...
    let x2 = x * x;
    1.0 - x2 / 12.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0))
}

pub(crate) fn k_imag_series(x: f64) -> f64 {
    // 2 Σ_{j≥1} (−1)^j x^{2j−1} / (2j+1)!
    let x2 = x * x;
    let mut term = -x / 3.0;
    let mut sum = term;
    for j in 2..=8 {
        let j = j as f64;
        term *= -x2 / ((2.0 * j) * (2.0 * j + 1.0));
        sum += term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn origin_limits() {
        let cf = coupling_factors(0.0);
        assert_eq!(cf.k_r, 1.0);
        assert_eq!(cf.k_i, 0.0);
        assert_eq!(ki2_minus_3kr2(0.0), -3.0);
    }

    #[test]
    fn two_pi() {
        let cf = coupling_factors(2.0 * PI);
        assert!(cf.k_r.abs() < 1e-12);
        assert!((cf.k_i + 1.0 / PI).abs() < 1e-12);
        let v = ki2_minus_3kr2(2.0 * PI);
        assert!((v - 1.0 / (PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn k_r_zeros_at_multiples_of_two_pi() {
        for k in [-3, -2, -1, 1, 2, 3, 5] {
            assert!(k_real(2.0 * PI * k as f64).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn series_matches_direct_where_both_are_accurate() {
        for &x in &[1e-8, 1e-6, 1e-4, 1e-3, 1e-2] {
            let rel = (k_real_series(x) - k_real_direct(x)).abs() / k_real_direct(x);
            assert!(rel < 1e-10, "k_r at {x}: {rel}");
        }
        // The closed form for K_i is well conditioned from ~1e-2 upwards.
        let mut x = 1e-2;
        while x <= 0.6 {
            let d = k_imag_direct(x);
            let rel = (k_imag_series(x) - d).abs() / d.abs();
            assert!(rel < 1e-10, "k_i at {x}: {rel}");
            x *= 1.1;
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn series_k_imag_against_high_precision_values() {
        // 2 (sin x − x)/x² evaluated with 40-digit arithmetic.
        let frozen = [
            (1e-8, -3.333333333333333316667e-9),
            (1e-6, -3.333333333333166666667e-7),
            (1e-4, -3.333333331666666667063e-5),
            (1e-3, -3.333333166666670634921e-4),
            (3e-3, -9.999995500000964285594e-4),
            (1e-2, -3.333316666706349151235e-3),
        ];
        for (x, want) in frozen {
            let got = k_imag(x);
            assert!(((got - want) / want).abs() < 1e-13, "x = {x}: {got} vs {want}");
            assert!(((k_imag(-x) + want) / want).abs() < 1e-13);
        }
    }

    #[test]
    fn continuous_across_thresholds() {
        let t = KI_SERIES_THRESHOLD;
        assert!(((k_imag_series(t) - k_imag_direct(t)) / k_imag_direct(t)).abs() < 1e-14);
        let t = KR_SERIES_THRESHOLD;
        assert!((k_real_series(t) - k_real_direct(t)).abs() < 1e-15);
    }

    #[test]
    fn strength_scaling() {
        let cf = CouplingFactors::new(1.3, 2.5);
        assert!((cf.mu - 2.5 * cf.k_r).abs() < 1e-15);
        assert!((cf.gamma_cap - 2.5 * cf.k_i).abs() < 1e-15);
    }
}
