//! Decibel conversion relative to the vacuum noise level.

use std::fmt;

use crate::error::{Error, Result};

/// Converts a linear noise power (vacuum = 1) to dB.
pub fn to_db(s: f64) -> Result<f64> {
    if s > 0.0 {
        Ok(10.0 * s.log10())
    } else {
        Err(Error::NonPositivePower(s))
    }
}

/// A noise level in dB that keeps perfect squeezing and divergent
/// stretching representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decibels {
    Finite(f64),
    /// Perfect squeezing, S = 0.
    NegInfinity,
    /// Divergent excess noise at an instability.
    PosInfinity,
}

impl Decibels {
    /// Reporting-path conversion: never fails. Values at or below zero
    /// (perfect squeezing, up to rounding) map to the `-inf` sentinel.
    pub fn from_linear(s: f64) -> Self {
        if s.is_infinite() && s > 0.0 {
            Decibels::PosInfinity
        } else if s <= 0.0 {
            Decibels::NegInfinity
        } else {
            Decibels::Finite(10.0 * s.log10())
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Decibels::Finite(v) => v,
            Decibels::NegInfinity => f64::NEG_INFINITY,
            Decibels::PosInfinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Decibels::Finite(_))
    }
}

impl fmt::Display for Decibels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decibels::Finite(v) => write!(f, "{v:.4} dB"),
            Decibels::NegInfinity => f.write_str("-inf dB"),
            Decibels::PosInfinity => f.write_str("+inf dB"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(to_db(1.0).unwrap(), 0.0);
        assert!((to_db(0.5).unwrap() + 3.0103).abs() < 1e-4);
        // -10 log 9
        assert!((to_db(1.0 / 9.0).unwrap() + 9.542).abs() < 1e-3);
    }

    #[test]
    fn non_positive_is_a_domain_error() {
        assert_eq!(to_db(0.0), Err(Error::NonPositivePower(0.0)));
        assert!(to_db(-0.2).is_err());
    }

    #[test]
    fn sentinels() {
        assert_eq!(Decibels::from_linear(0.0), Decibels::NegInfinity);
        assert_eq!(Decibels::from_linear(f64::INFINITY), Decibels::PosInfinity);
        assert_eq!(Decibels::from_linear(0.1).value(), -10.0);
        assert_eq!(Decibels::NegInfinity.value(), f64::NEG_INFINITY);
    }
}
