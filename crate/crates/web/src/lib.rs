//! Browser bindings for the interactive demo in `www/`.
//!
//! Every function returns a flat array of rows so JavaScript receives a
//! single `Float64Array`.

use cavsq::normalize::HatPoint;
use cavsq::optimize::linspace;
use cavsq::paths::{driven_distance_scan, kerr_fundamental_path};
use cavsq::reference::reference_spectrum;
use cavsq::Decibels;
use wasm_bindgen::prelude::*;

fn db(s: f64) -> f64 {
    Decibels::from_linear(s).value()
}

/// Reference-model spectra versus `ω̃` as rows `[ω̃, S−, S+]` in dB.
#[wasm_bindgen]
pub fn reference_curve(b_tilde: f64, delta_big: f64, omega_max: f64, samples: usize) -> Vec<f64> {
    linspace(0.0, omega_max, samples)
        .into_iter()
        .flat_map(|w| {
            let s = reference_spectrum(b_tilde, delta_big, w).with_vacuum();
            [w, db(s.minus), db(s.plus)]
        })
        .collect()
}

/// Zero-frequency fundamental noise along the dispersive optimum path, rows
/// `[m, S−, S+, stable]` with spectra in dB.
#[wasm_bindgen]
pub fn kerr_path(eta: f64, m_max: f64, samples: usize) -> Vec<f64> {
    kerr_fundamental_path(eta, m_max, samples)
        .into_iter()
        .flat_map(|s| [s.coordinate, db(s.s_minus), db(s.s_plus), f64::from(u8::from(s.stable))])
        .collect()
}

/// Harmonic noise and output power with a harmonic drive at `fraction` of
/// the instability, rows `[m, S−, S+, power ratio]`. The ratio is relative
/// to the undriven output at the same `m`.
#[wasm_bindgen]
pub fn driven_scan(fraction: f64, m_max: f64, samples: usize) -> Vec<f64> {
    let ms = linspace(0.0, m_max, samples);
    let curves = driven_distance_scan(&ms, &[0.0, fraction]);
    let (base, driven) = (&curves[0], &curves[1]);
    driven
        .samples
        .iter()
        .zip(&driven.power)
        .zip(&base.power)
        .flat_map(|((s, p), p0)| {
            let ratio = if *p0 > 0.0 { p / p0 } else { f64::NAN };
            [s.coordinate, db(s.s_minus), db(s.s_plus), ratio]
        })
        .collect()
}

/// Zero-frequency harmonic noise of one phase-matched operating point,
/// `[S−, S+]` in dB.
#[wasm_bindgen]
pub fn harmonic_point(m: f64, eta_in: f64, delta_hat: f64) -> Vec<f64> {
    let (_, b) = cavsq::spectra::hat_spectra(&HatPoint::real_drive(m, eta_in, delta_hat, 0.0, 1.0), 0.0);
    vec![db(b.s_minus), db(b.s_plus)]
}
