//! Zero-frequency noise along optimum paths through parameter space.
//!
//! Every path is parameterized in hat units (see [`HatPoint`]). Each sample
//! is checked for feasibility by reconstructing the drives that realize it,
//! and carries its stability flag; unstable samples are kept and flagged.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coupling::coupling_factors;
use crate::normalize::HatPoint;
use crate::optimize::{golden_section_min, linspace, Minimum};
use crate::spectra::{hat_spectra, harmonic_output_power, s_m_bound, Mode};
use crate::stability::{shg_discriminant, shg_instability_detunings};

/// Offset added to the instability detuning on the SHG mismatch path.
pub const INSTABILITY_OFFSET: f64 = 1e-6;

/// Phase mismatch at which the absorptive coupling vanishes.
pub const KERR_MISMATCH: f64 = 2.0 * PI;

/// Coarse mismatch grid of the harmonic optimum search.
pub const OPTIMUM_GRID: usize = 400;

/// Half-width of the detuning search, in units of `1 + 2K_r m`.
pub const DETUNING_SPAN: f64 = 3.0;

const GOLDEN_TOL: f64 = 1e-10;
const GOLDEN_MAX_ITER: usize = 200;

/// Zero-frequency noise of one output at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    /// Path coordinate (`m`, `x` or `η_in` depending on the path).
    pub coordinate: f64,
    pub point: HatPoint,
    pub s_minus: f64,
    pub s_plus: f64,
    pub divergent: bool,
    pub stable: bool,
    /// Drives realizing the point were reconstructed and verified.
    pub feasible: bool,
    /// Static harmonic bound `1/(1 + 2mK_r)` at this point.
    pub s_m: f64,
}

impl PathSample {
    pub fn evaluate(coordinate: f64, point: HatPoint, mode: Mode) -> Self {
        let (a, b) = hat_spectra(&point, 0.0);
        let s = match mode {
            Mode::Fundamental => a,
            Mode::Harmonic => b,
        };
        Self {
            coordinate,
            point,
            s_minus: s.s_minus,
            s_plus: s.s_plus,
            divergent: s.divergent,
            stable: !s.unstable,
            feasible: point.realize().is_ok(),
            s_m: s_m_bound(point.m, point.k_r),
        }
    }
}

#[cfg(feature = "parallel")]
fn map_grid<T: Send, F: Fn(f64) -> T + Sync>(grid: &[f64], f: F) -> Vec<T> {
    use rayon::prelude::*;
    grid.par_iter().map(|&x| f(x)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_grid<T, F: Fn(f64) -> T>(grid: &[f64], f: F) -> Vec<T> {
    grid.iter().map(|&x| f(x)).collect()
}

/// Fundamental output with `Δ = 0` on the dispersive branch (`x = 2π`,
/// `K_i = −1/π`): `δ̂ = 2m/π`, `m` from 0 to `m_max`.
pub fn kerr_fundamental_path(eta: f64, m_max: f64, samples: usize) -> Vec<PathSample> {
    map_grid(&linspace(0.0, m_max, samples), |m| {
        let p = HatPoint::real_drive(m, 0.0, 2.0 * m / PI, KERR_MISMATCH, eta);
        PathSample::evaluate(m, p, Mode::Fundamental)
    })
}

/// Same branch as [`kerr_fundamental_path`] with the detuning held fixed.
pub fn kerr_fixed_detuning_curves(
    eta: f64,
    delta_hats: &[f64],
    m_max: f64,
    samples: usize,
) -> Vec<(f64, Vec<PathSample>)> {
    delta_hats
        .iter()
        .map(|&d| {
            let curve = map_grid(&linspace(0.0, m_max, samples), |m| {
                let p = HatPoint::real_drive(m, 0.0, d, KERR_MISMATCH, eta);
                PathSample::evaluate(m, p, Mode::Fundamental)
            });
            (d, curve)
        })
        .collect()
}

/// Fundamental output with `Δ = 0` at fixed `m` as a function of the
/// mismatch `x`.
pub fn low_gamma_nl_mismatch_scan(m: f64, eta: f64, x_grid: &[f64]) -> Vec<PathSample> {
    map_grid(x_grid, |x| {
        PathSample::evaluate(x, zero_delta_point(m, eta, x), Mode::Fundamental)
    })
}

/// Mismatch minimizing the fundamental noise of [`low_gamma_nl_mismatch_scan`]
/// inside `[x_lo, x_hi]`.
pub fn low_gamma_nl_optimum(m: f64, eta: f64, x_lo: f64, x_hi: f64) -> Minimum {
    golden_section_min(
        |x| hat_spectra(&zero_delta_point(m, eta, x), 0.0).0.s_minus,
        x_lo,
        x_hi,
        GOLDEN_TOL,
        GOLDEN_MAX_ITER,
    )
}

fn zero_delta_point(m: f64, eta: f64, x: f64) -> HatPoint {
    let k_i = coupling_factors(x).k_i;
    HatPoint::real_drive(m, 0.0, -2.0 * k_i * m, x, eta)
}

/// Harmonic output without harmonic drive at fixed `m`, with
/// `δ̂ = Re δ̂₊ + ε` at each mismatch (`Δ ≈ 0` where no instability exists).
pub fn shg_harmonic_mismatch_path(m: f64, x_grid: &[f64]) -> Vec<PathSample> {
    map_grid(x_grid, |x| {
        let cf = coupling_factors(x);
        let upper = -2.0 * m * cf.k_i + shg_discriminant(m, &cf).max(0.0).sqrt();
        let p = HatPoint::real_drive(m, 0.0, upper + INSTABILITY_OFFSET, x, 1.0);
        PathSample::evaluate(x, p, Mode::Harmonic)
    })
}

/// One `m` of the harmonic optimum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumSample {
    pub m: f64,
    /// Best point over mismatch and detuning.
    pub optimized: PathSample,
    /// Phase-matched, resonant reference.
    pub phase_matched: PathSample,
    /// `1/(1 + 2m)`: the harmonic bound once a harmonic drive is allowed.
    pub driven_bound: f64,
    /// All golden-section refinements converged.
    pub converged: bool,
}

/// Lowest harmonic noise over detuning at fixed `(m, x)`.
///
/// Where the instability exists the infimum sits on its boundary, so the
/// point just outside `δ̂₊` is taken. Elsewhere the detuning is refined by
/// golden section over `−2K_i m ± 3(1 + 2K_r m)`.
fn best_detuning(m: f64, x: f64) -> (HatPoint, bool) {
    let cf = coupling_factors(x);
    if let Some((_, hi)) = shg_instability_detunings(m, &cf) {
        return (HatPoint::real_drive(m, 0.0, hi + INSTABILITY_OFFSET, x, 1.0), true);
    }
    let center = -2.0 * cf.k_i * m;
    let span = DETUNING_SPAN * (1.0 + 2.0 * cf.k_r * m);
    let r = golden_section_min(
        |d| hat_spectra(&HatPoint::real_drive(m, 0.0, d, x, 1.0), 0.0).1.s_minus,
        center - span,
        center + span,
        GOLDEN_TOL,
        GOLDEN_MAX_ITER,
    );
    (HatPoint::real_drive(m, 0.0, r.x, x, 1.0), r.converged)
}

fn harmonic_noise(m: f64, x: f64) -> (f64, bool) {
    let (p, ok) = best_detuning(m, x);
    (hat_spectra(&p, 0.0).1.s_minus, ok)
}

/// Minimum harmonic noise without harmonic drive over mismatch
/// `x ∈ [0, 4π]` and detuning, for each `m`.
pub fn shg_harmonic_optimum_vs_m(m_grid: &[f64]) -> Vec<OptimumSample> {
    map_grid(m_grid, |m| {
        let xs = linspace(0.0, 4.0 * PI, OPTIMUM_GRID);
        let mut converged = true;
        let mut best = 0;
        let mut best_f = f64::INFINITY;
        for (i, &x) in xs.iter().enumerate() {
            let (f, ok) = harmonic_noise(m, x);
            converged &= ok;
            if f < best_f {
                best_f = f;
                best = i;
            }
        }
        let lo = xs[best.saturating_sub(1)];
        let hi = xs[(best + 1).min(xs.len() - 1)];
        let refined = golden_section_min(|x| harmonic_noise(m, x).0, lo, hi, GOLDEN_TOL, GOLDEN_MAX_ITER);
        converged &= refined.converged;
        let x = if refined.f < best_f { refined.x } else { xs[best] };
        let (p, ok) = best_detuning(m, x);
        converged &= ok;
        OptimumSample {
            m,
            optimized: PathSample::evaluate(m, p, Mode::Harmonic),
            phase_matched: PathSample::evaluate(m, HatPoint::real_drive(m, 0.0, 0.0, 0.0, 1.0), Mode::Harmonic),
            driven_bound: s_m_bound(m, 1.0),
            converged,
        }
    })
}

/// Harmonic output at phase matching and `δ̂ = 0` for real harmonic
/// drives `η_in`.
pub fn driven_harmonic_path(m: f64, eta_in_grid: &[f64]) -> Vec<PathSample> {
    map_grid(eta_in_grid, |e| {
        PathSample::evaluate(e, HatPoint::real_drive(m, e, 0.0, 0.0, 1.0), Mode::Harmonic)
    })
}

/// Harmonic noise and output power versus `m` at a fixed fraction of the
/// negative-branch instability drive.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCurve {
    /// `η_in = −fraction·(1 + m)`.
    pub fraction: f64,
    pub samples: Vec<PathSample>,
    /// `|η_in − 2m|² = (2m + |η_in|)²`.
    pub power: Vec<f64>,
}

pub fn driven_distance_scan(m_grid: &[f64], fractions: &[f64]) -> Vec<DistanceCurve> {
    fractions
        .iter()
        .map(|&f| {
            let samples = map_grid(m_grid, |m| {
                let eta_in = -f * (1.0 + m);
                PathSample::evaluate(m, HatPoint::real_drive(m, eta_in, 0.0, 0.0, 1.0), Mode::Harmonic)
            });
            let power = samples
                .iter()
                .map(|s| harmonic_output_power(s.point.m, s.point.eta_in))
                .collect();
            DistanceCurve { fraction: f, samples, power }
        })
        .collect()
}

/// Output power of `η_in` relative to the undriven case at the same `m`.
pub fn power_ratio(m: f64, eta_in: f64) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    harmonic_output_power(m, Complex64::new(eta_in, 0.0)) / harmonic_output_power(m, zero)
}
