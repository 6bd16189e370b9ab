//! Tables behind the `coupling`, `steady` and `spectrum` subcommands.

use cavsq::normalize::{HatPoint, NormalizedParams};
use cavsq::optimize::linspace;
use cavsq::spectra::{hat_spectra, raw_spectra, Mode, SpectrumResult};
use cavsq::stability::eigenvalues;
use cavsq::steady_state::fixed_points;
use cavsq::{coupling_factors, CavityConfig, SteadyState};

use crate::table::{db, Cell, Table};
use crate::{CliError, Result};

pub fn coupling_table(dkl_min: f64, dkl_max: f64, samples: usize) -> Result<Table> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(dkl_min.is_finite() && dkl_max.is_finite()) || dkl_max < dkl_min {
        return Err(CliError::Usage(format!(
            "invalid mismatch range [{dkl_min}, {dkl_max}]"
        )));
    }
    let mut t = Table::new(&["dkl", "k_r", "k_i", "ki2_minus_3kr2"]);
    for x in linspace(dkl_min, dkl_max, samples) {
        let cf = coupling_factors(x);
        t.push(vec![x.into(), cf.k_r.into(), cf.k_i.into(), cf.ki2_minus_3kr2().into()]);
    }
    Ok(t)
}

pub fn steady_table(cfg: &CavityConfig) -> Result<Table> {
    let cf = cfg.coupling();
    let mut t = Table::new(&[
        "root",
        "n",
        "theta",
        "lambda_plus_re",
        "lambda_plus_im",
        "lambda_minus_re",
        "lambda_minus_im",
        "stable",
        "residual",
    ]);
    for (i, ss) in fixed_points(cfg)?.iter().enumerate() {
        let rep = eigenvalues(cfg, &cf, ss);
        t.push(vec![
            i.into(),
            ss.n.into(),
            ss.theta.into(),
            rep.lambda_plus.re.into(),
            rep.lambda_plus.im.into(),
            rep.lambda_minus.re.into(),
            rep.lambda_minus.im.into(),
            rep.stable.into(),
            ss.residual.into(),
        ]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Raw,
    Hat,
}

/// Frequency grid: `a:b:count` (linear), `log:a:b:count`, or a comma list.
pub fn parse_omega_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Usage(format!("invalid --omega-grid '{spec}'"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, n] => linspace(num(a)?, num(b)?, n.trim().parse().map_err(|_| bad())?),
        ["log", a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            if !(a > 0.0 && b > 0.0) {
                return Err(bad());
            }
            let count: usize = n.trim().parse().map_err(|_| bad())?;
            linspace(a.ln(), b.ln(), count).into_iter().map(f64::exp).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(bad()),
    };
    if grid.is_empty() || grid.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(bad());
    }
    Ok(grid)
}

#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub mode: Mode,
    pub units: Units,
    pub omega: Vec<f64>,
    pub root: Option<usize>,
    pub allow_unstable: bool,
}

/// Picks the fixed point to analyze.
pub fn select_root(cfg: &CavityConfig, root: Option<usize>) -> Result<SteadyState> {
    let roots = fixed_points(cfg)?;
    let list = || {
        roots
            .iter()
            .enumerate()
            .map(|(i, s)| format!("  {i}: n = {}", s.n))
            .collect::<Vec<_>>()
            .join("\n")
    };
    match (root, roots.len()) {
        (Some(i), len) if i < len => Ok(roots[i]),
        (Some(i), _) => Err(CliError::Usage(format!(
            "--root {i} out of range; fixed points:\n{}",
            list()
        ))),
        (None, 1) => Ok(roots[0]),
        (None, 0) => Err(CliError::Usage("configuration has no fixed point".into())),
        (None, _) => Err(CliError::Usage(format!(
            "several fixed points, choose one with --root:\n{}",
            list()
        ))),
    }
}

pub fn spectrum_table(cfg: &CavityConfig, opts: &SpectrumOptions) -> Result<Table> {
    let cf = cfg.coupling();
    let ss = select_root(cfg, opts.root)?;
    let rep = eigenvalues(cfg, &cf, &ss);
    if !rep.stable && !opts.allow_unstable {
        return Err(CliError::Model(cavsq::Error::InvalidConfig(format!(
            "fixed point n = {} is unstable (max Re λ = {}); pass --allow-unstable to proceed",
            ss.n,
            rep.max_real_part()
        ))));
    }
    let pick = |(a, b): (SpectrumResult, SpectrumResult)| match opts.mode {
        Mode::Fundamental => a,
        Mode::Harmonic => b,
    };
    let np = NormalizedParams::new(cfg, &cf, &ss);
    let hat = HatPoint::new(np.m, np.eta_in, cfg.delta / cfg.gamma(), cfg.dkl, np.eta);
    let mut t = Table::new(&[
        "omega",
        "s_minus",
        "s_plus",
        "theta_m",
        "s_minus_db",
        "s_plus_db",
        "divergent",
        "unstable",
    ]);
    for &w in &opts.omega {
        // Phases are always absolute; hat units only rescale frequency.
        let raw_w = match opts.units {
            Units::Raw => w,
            Units::Hat => w * cfg.gamma(),
        };
        let raw = pick(raw_spectra(cfg, &cf, &ss, raw_w));
        let s = match opts.units {
            Units::Raw => raw,
            Units::Hat => pick(hat_spectra(&hat, w)),
        };
        t.push(vec![
            w.into(),
            s.s_minus.into(),
            s.s_plus.into(),
            Cell::Num(raw.theta_m.unwrap_or(f64::NAN)),
            db(s.s_minus).into(),
            db(s.s_plus).into(),
            s.divergent.into(),
            s.unstable.into(),
        ]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn coupling_rows() {
        let t = coupling_table(-4.0 * PI, 4.0 * PI, 9).unwrap();
        let kr = t.column("k_r").unwrap();
        let ki = t.column("k_i").unwrap();
        assert!(kr[6].abs() < 1e-12);
        assert!((ki[6] + 1.0 / PI).abs() < 1e-12);
        assert_eq!(kr[4], 1.0);
        let one = coupling_table(0.5, 2.0, 1).unwrap();
        assert_eq!(one.column("dkl").unwrap(), vec![0.5]);
        assert!(coupling_table(1.0, 0.0, 3).is_err());
        assert!(coupling_table(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn omega_grids() {
        assert_eq!(parse_omega_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_omega_grid("0,2.5").unwrap(), vec![0.0, 2.5]);
        let g = parse_omega_grid("log:0.01:100:5").unwrap();
        assert!((g[2] - 1.0).abs() < 1e-12);
        for bad in ["", "a:b:c", "log:0:1:3", "-1", "1:2"] {
            assert!(parse_omega_grid(bad).is_err(), "{bad}");
        }
    }
}
