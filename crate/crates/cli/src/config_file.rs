//! Flat `key = value` configuration files.
//!
//! Keys are the [`CavityConfig`] field names. Blank lines and `#` comments
//! are ignored. An optional `n` key asks for the fundamental drive that puts
//! the cavity at that photon number; it then replaces `alpha_in_mod`.

use cavsq::steady_state::input_power_for_n;
use cavsq::CavityConfig;

use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub config: CavityConfig,
    /// Requested photon number, if any.
    pub n: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut cfg = CavityConfig::default();
        let mut n = None;
        for (i, raw) in text.lines().enumerate() {
            let err = |message: String| CliError::Config {
                path: path.to_string(),
                line: i + 1,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("'{}' is not a number", value.trim())))?;
            let slot = match key {
                "gamma_c" => &mut cfg.gamma_c,
                "gamma_s" => &mut cfg.gamma_s,
                "delta" => &mut cfg.delta,
                "nu" => &mut cfg.nu,
                "dkl" => &mut cfg.dkl,
                "alpha_in_mod" => &mut cfg.alpha_in_mod,
                "alpha_in_phase" => &mut cfg.alpha_in_phase,
                "beta_in_mod" => &mut cfg.beta_in_mod,
                "beta_in_phase" => &mut cfg.beta_in_phase,
                "n" => {
                    n = Some(value);
                    continue;
                }
                other => return Err(err(format!("unknown key '{other}'"))),
            };
            *slot = value;
        }
        Ok(Self { config: cfg, n })
    }

    pub fn read(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// The validated configuration, with the fundamental drive solved for
    /// when `n` was given.
    pub fn resolve(&self) -> Result<CavityConfig> {
        let cfg = self.config.validated()?;
        match self.n {
            None => Ok(cfg),
            Some(n) => {
                let power = input_power_for_n(&cfg, &cfg.coupling(), n, cfg.drive_phase_difference())?;
                Ok(CavityConfig {
                    alpha_in_mod: power.sqrt(),
                    ..cfg
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields_and_comments() {
        let text = "# cavity\ngamma_c = 0.9\n gamma_s=0.1 # loss\n\ndkl = 6.283185307179586\nn = 2\n";
        let f = ConfigFile::parse(text, "t").unwrap();
        assert_eq!(f.config.gamma_c, 0.9);
        assert_eq!(f.config.gamma_s, 0.1);
        assert_eq!(f.n, Some(2.0));
        assert_eq!(f.config.nu, 1.0);
    }

    #[test]
    fn reports_line_numbers() {
        match ConfigFile::parse("gamma_c = 1\nfoo = 2\n", "c.txt") {
            Err(CliError::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(ConfigFile::parse("gamma_c 1\n", "c").is_err());
        assert!(ConfigFile::parse("gamma_c = x\n", "c").is_err());
    }

    #[test]
    fn photon_number_sets_the_drive() {
        let f = ConfigFile::parse("dkl = 1.0\nn = 1.5\n", "c").unwrap();
        let cfg = f.resolve().unwrap();
        let roots = cavsq::steady_state::solve_n(&cfg, &cfg.coupling()).unwrap();
        assert!(roots.iter().any(|r| (r - 1.5).abs() < 1e-9));
    }
}
