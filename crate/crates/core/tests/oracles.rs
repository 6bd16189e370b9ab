//! Independent numerical checks of the closed forms.

#![allow(clippy::excessive_precision)]

mod common;

use cavsq::normalize::{HatPoint, NormalizedParams};
use cavsq::spectra::{hat_spectra, raw_spectra, squeezing_phase, Mode};
use cavsq::stability::{drift_matrix, eigenvalues};
use cavsq::steady_state::{fixed_points, quintic_coefficients};
use cavsq::{coupling_factors, CavityConfig};
use nalgebra::{Matrix2, Matrix3x1};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn quintic_coefficients_match_symbolic_expansion() {
    let cfg = CavityConfig {
        gamma_c: 0.7,
        gamma_s: 0.3,
        delta: 0.4,
        nu: 0.8,
        dkl: 2.5,
        alpha_in_mod: 1.3,
        alpha_in_phase: 0.2,
        beta_in_mod: 0.35,
        beta_in_phase: -0.9,
    };
    let cf = cfg.coupling();
    assert!((cf.k_r - 0.57636595697501878875).abs() < 1e-15);
    assert!((cf.k_i + 0.60848891388673392190).abs() < 1e-15);
    let want = [
        -4.7477056246145696719,
        0.38957020688768421900,
        -0.068437013453067442069,
        1.1236841605604033864,
        0.47902148061361997308,
        0.20211511247821536864,
    ];
    let got = quintic_coefficients(&cfg, &cf);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-13 * w.abs().max(1.0), "{g} vs {w}");
    }
}

/// `K = (2/L²) ∫₀^L dz ∫₀^z dz' e^{−iΔk z} e^{iΔk z'}` by Gauss-Legendre.
fn coupling_by_quadrature(x: f64) -> C {
    // 20-point rule on [−1, 1].
    const NODES: [(f64, f64); 10] = [
        (0.0765265211334973, 0.1527533871307258),
        (0.2277858511416451, 0.1491729864726037),
        (0.3737060887154195, 0.1420961093183820),
        (0.5108670019508271, 0.1316886384491766),
        (0.6360536807265150, 0.1181945319615184),
        (0.7463319064601508, 0.1019301198172404),
        (0.8391169718222188, 0.0832767415767048),
        (0.9122344282513259, 0.0626720483341091),
        (0.9639719272779138, 0.0406014298003869),
        (0.9931285991850949, 0.0176140071391521),
    ];
    let rule: Vec<(f64, f64)> = NODES
        .iter()
        .flat_map(|&(t, w)| [(t, w), (-t, w)])
        .collect();
    // Unit length; map [−1, 1] to [0, b].
    let integrate = |b: f64, f: &dyn Fn(f64) -> C| -> C {
        rule.iter()
            .map(|&(t, w)| f(0.5 * b * (t + 1.0)) * (0.5 * b * w))
            .sum()
    };
    let outer = |z: f64| {
        let inner = integrate(z, &|zp: f64| C::from_polar(1.0, x * zp));
        C::from_polar(1.0, -x * z) * inner
    };
    2.0 * integrate(1.0, &outer)
}

#[test]
fn coupling_factors_match_the_double_integral() {
    for x in [PI, 0.3, 2.0 * PI, -4.1, 7.5] {
        let k = coupling_by_quadrature(x);
        let cf = coupling_factors(x);
        assert!((k.re - cf.k_r).abs() < 1e-12, "x = {x}: {} vs {}", k.re, cf.k_r);
        assert!((k.im - cf.k_i).abs() < 1e-12, "x = {x}: {} vs {}", k.im, cf.k_i);
    }
    let cf = coupling_factors(PI);
    assert!((cf.k_r - 4.0 / (PI * PI)).abs() < 1e-15);
    assert!((cf.k_i + 2.0 / PI).abs() < 1e-15);
}

fn eig2(m: &[[C; 2]; 2]) -> [C; 2] {
    let mat = Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
    let e = mat.eigenvalues().expect("schur converged");
    [e[0], e[1]]
}

#[test]
fn drift_eigenvalues_match_numerical_eigensolve() {
    let mut r = common::rng(7);
    let mut checked = 0;
    while checked < 2000 {
        let cfg = common::random_config(&mut r);
        let cf = cfg.coupling();
        for ss in fixed_points(&cfg).unwrap() {
            let rep = eigenvalues(&cfg, &cf, &ss);
            let mut num = eig2(&drift_matrix(&cfg, &cf, &ss));
            let mut ana = [rep.lambda_plus, rep.lambda_minus];
            let key = |z: &C| (z.re, z.im);
            num.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            ana.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            for (a, b) in ana.iter().zip(num) {
                assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
            }
            checked += 1;
        }
    }
}

/// Quadrature noise of an output by direct linear response.
///
/// Inputs are the coupler, the loss port and the harmonic input. The output
/// fluctuation is `k δa + k* δa† − (direct input)`, with the harmonic output
/// fed by `2√μ α δa`.
fn brute_force(cfg: &CavityConfig, alpha: C, omega: f64, mode: Mode) -> (f64, f64, f64) {
    let cf = cfg.coupling();
    let n = alpha.norm_sqr();
    let l = c(cfg.gamma() + 2.0 * cf.mu * n, cfg.delta + 2.0 * cf.gamma_cap * n);
    let b = 2.0 * cf.mu.sqrt() * cfg.beta_in() - c(cf.mu, cf.gamma_cap) * alpha * alpha;
    let g = Matrix3x1::new(
        c((2.0 * cfg.gamma_c).sqrt(), 0.0),
        c((2.0 * cfg.gamma_s).sqrt(), 0.0),
        2.0 * cf.mu.sqrt() * alpha.conj(),
    );
    let (k, direct) = match mode {
        Mode::Fundamental => (c((2.0 * cfg.gamma_c).sqrt(), 0.0), 0),
        Mode::Harmonic => (2.0 * alpha * cf.mu.sqrt(), 2),
    };
    let response = |om: f64| {
        let m = Matrix2::new(l - c(0.0, om), -b, -b.conj(), l.conj() - c(0.0, om));
        m.try_inverse().unwrap()
    };
    let variance = |theta: f64| -> f64 {
        let rot = C::from_polar(1.0, -theta);
        let gp = response(omega);
        let gm = response(-omega);
        let mut total = C::new(0.0, 0.0);
        for i in 0..3 {
            let d = if i == direct { 1.0 } else { 0.0 };
            let p = rot * (k * gp[(0, 0)] * g[i] - d) + rot.conj() * k.conj() * gp[(1, 0)] * g[i];
            let q = rot * k * gm[(0, 1)] * g[i].conj()
                + rot.conj() * (k.conj() * gm[(1, 1)] * g[i].conj() - d);
            total += p * q;
        }
        total.re
    };
    // V(θ) = A + Re(C e^{−2iθ}).
    let (v0, v1, v2) = (variance(0.0), variance(0.25 * PI), variance(0.5 * PI));
    let a = 0.5 * (v0 + v2);
    let corr = c(0.5 * (v0 - v2), v1 - a);
    let probe = 0.37;
    let fit = a + (corr * C::from_polar(1.0, -2.0 * probe)).re;
    assert!((fit - variance(probe)).abs() < 1e-10 * a.abs());
    let theta_min = 0.5 * (corr.arg() + PI);
    (a - corr.norm(), a + corr.norm(), theta_min)
}

/// Difference of two quadrature angles modulo π.
fn angle_gap(a: f64, b: f64) -> f64 {
    (a - b + 0.5 * PI).rem_euclid(PI) - 0.5 * PI
}

#[test]
fn spectra_and_phases_match_linear_response() {
    let mut r = common::rng(11);
    let mut checked = 0;
    while checked < 300 {
        let cfg = common::random_config(&mut r);
        let cf = cfg.coupling();
        for ss in fixed_points(&cfg).unwrap() {
            if !eigenvalues(&cfg, &cf, &ss).stable {
                continue;
            }
            let omega = r.gen_range(0.0..3.0);
            let (a, b) = raw_spectra(&cfg, &cf, &ss, omega);
            for (res, mode) in [(a, Mode::Fundamental), (b, Mode::Harmonic)] {
                let (lo, hi, th) = brute_force(&cfg, ss.alpha, omega, mode);
                let tol = 1e-9 * hi.abs().max(1.0);
                assert!((res.s_minus - lo).abs() < tol, "{mode:?}: {} vs {lo}", res.s_minus);
                assert!((res.s_plus - hi).abs() < tol, "{mode:?}: {} vs {hi}", res.s_plus);
                if hi - lo > 1e-6 {
                    let phase = squeezing_phase(&cfg, &cf, &ss, omega, mode).unwrap();
                    assert!(angle_gap(phase, th).abs() < 1e-6, "{mode:?}: {phase} vs {th}");
                }
            }
            checked += 1;
        }
    }
}

#[test]
fn raw_and_hat_spectra_agree() {
    let mut r = common::rng(13);
    let mut checked = 0;
    while checked < 500 {
        let cfg = common::random_config(&mut r);
        let cf = cfg.coupling();
        for ss in fixed_points(&cfg).unwrap() {
            let np = NormalizedParams::new(&cfg, &cf, &ss);
            let p = HatPoint::new(np.m, np.eta_in, cfg.delta / cfg.gamma(), cfg.dkl, np.eta);
            let omega = r.gen_range(0.0..3.0);
            let (ra, rb) = raw_spectra(&cfg, &cf, &ss, omega);
            let (ha, hb) = hat_spectra(&p, omega / cfg.gamma());
            for (x, y) in [(ra, ha), (rb, hb)] {
                assert!((x.s_minus - y.s_minus).abs() < 1e-10 * x.s_minus.abs().max(1.0));
                if x.s_plus.is_finite() && x.s_plus < 1e8 {
                    assert!((x.s_plus - y.s_plus).abs() < 1e-10 * x.s_plus.abs().max(1.0));
                }
                assert_eq!(x.unstable, y.unstable);
            }
            // Hat phases are referenced to θ = 0: the fundamental shifts by θ,
            // the harmonic by 2θ.
            if let (Some(x), Some(y)) = (ra.theta_m, ha.theta_m) {
                assert!(angle_gap(x, y + ss.theta).abs() < 1e-8);
            }
            checked += 1;
        }
    }
}
