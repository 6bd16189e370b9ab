//! Data behind each figure, with scalar sanity checks.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use cavsq::coupling::{coupling_factors, k_imag, k_real};
use cavsq::normalize::HatPoint;
use cavsq::optimize::linspace;
use cavsq::paths::{
    driven_distance_scan, driven_harmonic_path, kerr_fixed_detuning_curves,
    kerr_fundamental_path, low_gamma_nl_mismatch_scan, low_gamma_nl_optimum,
    shg_harmonic_mismatch_path, shg_harmonic_optimum_vs_m, DistanceCurve, PathSample,
    KERR_MISMATCH,
};
use cavsq::spectra::hat_spectra;
use cavsq::stability::driven_instability_eta;

use crate::commands::coupling_table;
use crate::table::{db, Table};
use crate::{CliError, Result};

pub const FIGURES: std::ops::RangeInclusive<u8> = 1..=10;

const KERR_ETAS: [(f64, &str); 3] = [(0.9, "eta090"), (0.99, "eta099"), (1.0, "eta100")];
const KERR_M_MAX: f64 = 4.0;
const KERR_SAMPLES: usize = 401;
const FIXED_DETUNINGS: [(f64, &str); 4] = [
    (0.5, "delta050"),
    (1.0, "delta100"),
    (1.5, "delta150"),
    (3.0, "delta300"),
];
const LOW_M: f64 = 0.1;
const LOW_M_ETA: f64 = 0.99;
const LARGE_M: f64 = 50.0;
const FRACTIONS: [(f64, &str); 4] = [(0.0, "f000"), (0.25, "f025"), (0.5, "f050"), (0.75, "f075")];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub table: Table,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self { name, passed, detail }
    }
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub number: u8,
    pub series: Vec<Series>,
    pub checks: Vec<Check>,
}

impl Figure {
    pub fn file_name(&self, series: &Series) -> String {
        format!("fig{}_{}.csv", self.number, series.name)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passed { "ok" } else { "FAILED" };
            s.push_str(&format!("fig{} {}: {} ({})\n", self.number, c.name, tag, c.detail));
        }
        s
    }

    /// Writes every series into `dir`, but only if all checks passed.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return Err(CliError::Check(format!("fig{} {}: {}", self.number, c.name, c.detail)));
        }
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| CliError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let mut written = Vec::new();
        for s in &self.series {
            let path = dir.join(self.file_name(s));
            std::fs::write(&path, s.table.to_csv()).map_err(io(&path))?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn figure(number: u8) -> Result<Figure> {
    let (series, checks) = match number {
        1 => fig1()?,
        2 => fig2(),
        3 => fig3(),
        4 => fig4(),
        5 => fig5()?,
        6 => fig6(),
        7 => fig7(),
        8 => fig8(),
        9 => fig9(),
        10 => fig10(),
        n => {
            return Err(CliError::Usage(format!(
                "no figure {n}; expected {}..={}",
                FIGURES.start(),
                FIGURES.end()
            )))
        }
    };
    Ok(Figure { number, series, checks })
}

fn series(name: &str, table: Table) -> Series {
    Series { name: name.to_string(), table }
}

fn path_table(coordinate: &'static str, samples: &[PathSample]) -> Table {
    let mut t = Table::new(&[
        coordinate,
        "delta_hat",
        "s_minus",
        "s_plus",
        "s_minus_db",
        "s_plus_db",
        "s_m",
        "divergent",
        "stable",
        "feasible",
    ]);
    for s in samples {
        t.push(vec![
            s.coordinate.into(),
            s.point.delta_hat.into(),
            s.s_minus.into(),
            s.s_plus.into(),
            db(s.s_minus).into(),
            db(s.s_plus).into(),
            s.s_m.into(),
            s.divergent.into(),
            s.stable.into(),
            s.feasible.into(),
        ]);
    }
    t
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

type Built = (Vec<Series>, Vec<Check>);

fn fig1() -> Result<Built> {
    let t = coupling_table(-4.0 * PI, 4.0 * PI, 801)?;
    let checks = vec![
        Check::new(
            "phase-matched limits",
            k_real(0.0) == 1.0 && k_imag(0.0) == 0.0,
            format!("k_r(0) = {}, k_i(0) = {}", k_real(0.0), k_imag(0.0)),
        ),
        Check::new(
            "dispersive point",
            close(k_real(2.0 * PI), 0.0, 1e-12) && close(k_imag(2.0 * PI), -1.0 / PI, 1e-12),
            format!("k_r(2π) = {:e}, k_i(2π) = {}", k_real(2.0 * PI), k_imag(2.0 * PI)),
        ),
    ];
    Ok((vec![series("coupling", t)], checks))
}

fn fig2() -> Built {
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for (eta, name) in KERR_ETAS {
        out.push(series(name, path_table("m", &kerr_fundamental_path(eta, KERR_M_MAX, KERR_SAMPLES))));
        let m = PI * (1.0 - 1e-9);
        let p = HatPoint::real_drive(m, 0.0, 2.0 * m / PI, KERR_MISMATCH, eta);
        let s = hat_spectra(&p, 0.0).0.s_minus;
        let floor = 1.0 - eta;
        let passed = if eta == 1.0 {
            s < 1e-8
        } else {
            close(db(s), db(floor), 0.05)
        };
        checks.push(Check::new(
            "asymptote 1 - eta",
            passed,
            format!("eta = {eta}: S(m → π) = {s:.6e}, floor {floor:.3}"),
        ));
    }
    (out, checks)
}

fn fig3() -> Built {
    let optimum = kerr_fundamental_path(LOW_M_ETA, KERR_M_MAX, KERR_SAMPLES);
    let detunings: Vec<f64> = FIXED_DETUNINGS.iter().map(|d| d.0).collect();
    let curves = kerr_fixed_detuning_curves(LOW_M_ETA, &detunings, KERR_M_MAX, KERR_SAMPLES);
    let mut worst = f64::NEG_INFINITY;
    for (_, c) in &curves {
        for (o, f) in optimum.iter().zip(c) {
            if o.coordinate < PI && f.stable {
                worst = worst.max(o.s_minus - f.s_minus);
            }
        }
    }
    let mut out = vec![series("optimum", path_table("m", &optimum))];
    for ((_, c), (_, name)) in curves.iter().zip(FIXED_DETUNINGS) {
        out.push(series(name, path_table("m", c)));
    }
    let checks = vec![Check::new(
        "zero-detuning path is lowest below m = π",
        worst <= 1e-12,
        format!("max(S_opt − S_fixed) = {worst:e}"),
    )];
    (out, checks)
}

fn fig4() -> Built {
    let xs = linspace(0.0, 4.0 * PI, 801);
    let scan = low_gamma_nl_mismatch_scan(LOW_M, LOW_M_ETA, &xs);
    let best = low_gamma_nl_optimum(LOW_M, LOW_M_ETA, 0.0, 2.0 * PI);
    let mut t = Table::new(&["dkl", "s_minus", "s_minus_db", "converged"]);
    t.push(vec![best.x.into(), best.f.into(), db(best.f).into(), best.converged.into()]);
    let checks = vec![Check::new(
        "optimum at finite mismatch",
        best.converged && best.x > 0.1 && best.f < scan[0].s_minus,
        format!("x* = {:.6}, S = {:.8} vs {:.8} at x = 0", best.x, best.f, scan[0].s_minus),
    )];
    (vec![series("scan", path_table("dkl", &scan)), series("optimum", t)], checks)
}

fn fig5() -> Result<Built> {
    let t = coupling_table(0.0, 4.0 * PI, 801)?;
    let at = |x: f64| coupling_factors(x).ki2_minus_3kr2();
    let checks = vec![Check::new(
        "sign change above π",
        at(0.0) < 0.0 && at(PI) < 0.0 && at(1.5 * PI) > 0.0,
        format!("{:.4} at 0, {:.4} at π, {:.4} at 1.5π", at(0.0), at(PI), at(1.5 * PI)),
    )];
    Ok((vec![series("discriminant", t)], checks))
}

fn fig6() -> Built {
    let xs = linspace(0.0, 4.0 * PI, 801);
    let path = shg_harmonic_mismatch_path(LARGE_M, &xs);
    let at_two_pi = shg_harmonic_mismatch_path(LARGE_M, &[2.0 * PI])[0];
    let below = path.iter().filter(|s| s.s_minus < s.s_m - 1e-12).count();
    let checks = vec![
        Check::new(
            "no static squeezing at x = 2π",
            close(at_two_pi.s_m, 1.0, 1e-12),
            format!("S_M = {}", at_two_pi.s_m),
        ),
        Check::new(
            "never below the static bound",
            below == 0,
            format!("{below} samples below S_M"),
        ),
    ];
    (vec![series("path", path_table("dkl", &path))], checks)
}

fn fig7() -> Built {
    let ms = linspace(0.0, LARGE_M, 101);
    let curve = shg_harmonic_optimum_vs_m(&ms);
    let mut opt = Table::new(&[
        "m",
        "dkl",
        "delta_hat",
        "s_minus",
        "s_minus_db",
        "s_m",
        "stable",
        "feasible",
        "converged",
    ]);
    let mut pm = Table::new(&["m", "s_minus", "s_minus_db"]);
    let mut bound = Table::new(&["m", "s_m", "s_m_db"]);
    for o in &curve {
        let p = o.optimized;
        opt.push(vec![
            o.m.into(),
            p.point.dkl.into(),
            p.point.delta_hat.into(),
            p.s_minus.into(),
            db(p.s_minus).into(),
            p.s_m.into(),
            p.stable.into(),
            p.feasible.into(),
            o.converged.into(),
        ]);
        pm.push(vec![o.m.into(), o.phase_matched.s_minus.into(), db(o.phase_matched.s_minus).into()]);
        bound.push(vec![o.m.into(), o.driven_bound.into(), db(o.driven_bound).into()]);
    }
    let far = shg_harmonic_optimum_vs_m(&[1e4])[0].phase_matched.s_minus;
    let all_ok = curve.iter().all(|o| o.converged && o.optimized.stable);
    let dominated = curve
        .iter()
        .all(|o| o.optimized.s_minus <= o.phase_matched.s_minus + 1e-12);
    let checks = vec![
        Check::new(
            "phase-matched asymptote -10 log 9",
            close(db(far), -10.0 * 9f64.log10(), 0.01),
            format!("{:.4} dB at m = 1e4", db(far)),
        ),
        Check::new("optimized below phase-matched", dominated, "all m".into()),
        Check::new("converged and stable", all_ok, format!("{} samples", curve.len())),
    ];
    (
        vec![
            series("optimized", opt),
            series("phase_matched", pm),
            series("driven_bound", bound),
        ],
        checks,
    )
}

fn fig8() -> Built {
    let m = LARGE_M;
    let us = linspace(0.0, 1.2 * (1.0 + 2.0 * m), 121);
    let mut etas: Vec<f64> = us.iter().rev().map(|u| m - u).collect();
    etas.extend(us[1..].iter().map(|u| m + u));
    let path = driven_harmonic_path(m, &etas);
    let centre = &path[120];
    let mut asym = 0.0f64;
    for i in 0..120 {
        asym = asym.max((path[i].s_minus - path[240 - i].s_minus).abs());
    }
    let (neg, _) = driven_instability_eta(m);
    let edge = driven_harmonic_path(m, &[neg])[0];
    let checks = vec![
        Check::new(
            "coherent state at eta_in = m",
            centre.s_minus == 1.0 && centre.s_plus == 1.0,
            format!("S = ({}, {})", centre.s_minus, centre.s_plus),
        ),
        Check::new("symmetric about eta_in = m", asym < 1e-9, format!("max |ΔS| = {asym:e}")),
        Check::new(
            "divergence at eta_in = -(1 + m)",
            edge.divergent,
            format!("S_+ = {}", edge.s_plus),
        ),
    ];
    (vec![series("path", path_table("eta_in", &path))], checks)
}

fn distance_curves() -> Vec<DistanceCurve> {
    let fractions: Vec<f64> = FRACTIONS.iter().map(|f| f.0).collect();
    driven_distance_scan(&linspace(0.0, 5.0, 201), &fractions)
}

fn improvement_at_half_way() -> (f64, f64, f64) {
    let c = driven_distance_scan(&[2.5], &[0.0, 0.5]);
    let ratio = c[1].power[0] / c[0].power[0];
    (c[0].samples[0].s_minus, c[1].samples[0].s_minus, ratio)
}

fn fig9() -> Built {
    let out = distance_curves()
        .iter()
        .zip(FRACTIONS)
        .map(|(c, (_, name))| series(name, path_table("m", &c.samples)))
        .collect();
    let (base, half, _) = improvement_at_half_way();
    let checks = vec![
        Check::new(
            "undriven baseline at m = 2.5",
            close(db(base), -5.1, 0.1),
            format!("{:.3} dB", db(base)),
        ),
        Check::new(
            "half-way drive at m = 2.5",
            (-7.4..=-7.0).contains(&db(half)),
            format!("{:.3} dB", db(half)),
        ),
    ];
    (out, checks)
}

fn fig10() -> Built {
    let out = distance_curves()
        .iter()
        .zip(FRACTIONS)
        .map(|(c, (_, name))| {
            let mut t = Table::new(&["m", "eta_in", "power"]);
            for (s, p) in c.samples.iter().zip(&c.power) {
                t.push(vec![s.coordinate.into(), s.point.eta_in.re.into(), (*p).into()]);
            }
            series(name, t)
        })
        .collect();
    let (_, _, ratio) = improvement_at_half_way();
    let checks = vec![Check::new(
        "power nearly doubled at half-way drive",
        (1.8..=2.2).contains(&ratio),
        format!("ratio {ratio:.4} at m = 2.5"),
    )];
    (out, checks)
}
