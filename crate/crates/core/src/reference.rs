//! The one-mode reference system.
//!
//! After phase shifts that make every input-output coupling real, any
//! linearized one-mode system evolves as
//!
//! ```text
//! dδc/dτ = −(1 + iΔ) δc + B̃ δc† + Σ_n √(2γ̃_n) δc_in^n,    Σ_n γ̃_n = 1
//! ```
//!
//! and the output spectrum of channel `n` is `1 + γ̃_n :S_ref:`, where
//! `:S_ref:` is the normally ordered spectrum of a system with a single
//! reversible channel. Everything dynamic lives in `:S_ref:`; the weights
//! `γ̃_n` carry the static penalty of the other inputs.

use crate::error::{Error, Result};

/// Tolerance on `Σ γ̃_n = 1`.
pub const CHANNEL_SUM_TOL: f64 = 1e-12;

/// Squeezing (`minus`) and stretching (`plus`) values. `plus` is
/// `f64::INFINITY` at a divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisePair {
    pub minus: f64,
    pub plus: f64,
}

impl NoisePair {
    pub fn is_divergent(&self) -> bool {
        self.plus.is_infinite()
    }

    /// Converts a normally ordered pair to full spectra (adds the vacuum).
    pub fn with_vacuum(self) -> Self {
        Self {
            minus: 1.0 + self.minus,
            plus: 1.0 + self.plus,
        }
    }
}

/// Normally ordered reference spectra `:S_∓^ref(ω̃):`.
///
/// The squeezing branch is evaluated as `−4|B̃| / (2|B̃| + s)`, which equals
/// `4|B̃|(2|B̃| − s)/D` because `s² − 4|B̃|² = D`; it stays finite at the
/// instability where `D → 0`.
pub fn reference_spectrum(b_tilde_mod: f64, delta_big: f64, omega_tilde: f64) -> NoisePair {
    let b = b_tilde_mod;
    if b == 0.0 {
        return NoisePair { minus: 0.0, plus: 0.0 };
    }
    let d2 = delta_big * delta_big;
    let w = omega_tilde * omega_tilde;
    let s = ((1.0 + w + b * b - d2).powi(2) + 4.0 * d2).sqrt();
    let den = reference_denominator(b, delta_big, omega_tilde);
    let minus = -4.0 * b / (2.0 * b + s);
    let plus = if den > 0.0 {
        4.0 * b * (2.0 * b + s) / den
    } else {
        f64::INFINITY
    };
    NoisePair { minus, plus }
}

/// `(1 − ω̃² − |B̃|² + Δ²)² + 4ω̃²`, with `1 − |B̃|²` factored to keep
/// accuracy near the instability.
pub fn reference_denominator(b_tilde_mod: f64, delta_big: f64, omega_tilde: f64) -> f64 {
    let b = b_tilde_mod;
    let w = omega_tilde * omega_tilde;
    let core = (1.0 - b) * (1.0 + b) + delta_big * delta_big - w;
    core * core + 4.0 * w
}

/// Reference squeezing at the optimum `ω̃ = 0`, `Δ = 0`:
/// `−4|B̃|/(1 + |B̃|)²`.
pub fn optimized_noise(b_tilde_mod: f64) -> f64 {
    let b = b_tilde_mod;
    -4.0 * b / ((1.0 + b) * (1.0 + b))
}

/// Reference squeezing on the instability manifold `1 + Δ² = |B̃|²`:
/// `4|B̃|(2|B̃| − √(4|B̃|² + ω̃²(ω̃²+4))) / (ω̃²(ω̃²+4))`.
/// The `ω̃ = 0` value is the analytic limit −1.
pub fn instability_limit_spectrum(b_tilde_mod: f64, omega_tilde: f64) -> f64 {
    if omega_tilde == 0.0 {
        return -1.0;
    }
    let b = b_tilde_mod;
    let w = omega_tilde * omega_tilde;
    let y = w * (w + 4.0);
    // 2b − √(4b² + y) = −y / (2b + √(4b² + y))
    -4.0 * b / (2.0 * b + (4.0 * b * b + y).sqrt())
}

/// `S_−^ref · S_+^ref` for the full (vacuum-included) spectra.
/// `None` where the stretching diverges.
pub fn mus_product(b_tilde_mod: f64, delta_big: f64, omega_tilde: f64) -> Option<f64> {
    let full = reference_spectrum(b_tilde_mod, delta_big, omega_tilde).with_vacuum();
    if full.is_divergent() {
        None
    } else {
        Some(full.minus * full.plus)
    }
}

/// One noisy input channel and its weight `γ̃_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub name: String,
    pub weight: f64,
    /// Irreversible losses have no outgoing counterpart.
    pub irreversible: bool,
}

/// The input channels of a one-mode system in tilde normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    channels: Vec<Channel>,
}

impl ChannelSet {
    pub const COUPLING: &'static str = "coupling";
    pub const NONLINEAR: &'static str = "nonlinear";
    pub const SCATTERING: &'static str = "scattering";

    pub fn new(channels: Vec<Channel>) -> Result<Self> {
        if let Some(c) = channels.iter().find(|c| !(0.0..=1.0).contains(&c.weight)) {
            return Err(Error::InvalidConfig(format!(
                "channel '{}' weight {} outside [0, 1]",
                c.name, c.weight
            )));
        }
        let sum: f64 = channels.iter().map(|c| c.weight).sum();
        if (sum - 1.0).abs() > CHANNEL_SUM_TOL {
            return Err(Error::InvalidConfig(format!("channel weights sum to {sum}, not 1")));
        }
        let irreversible = channels.iter().filter(|c| c.irreversible).count();
        if irreversible != 1 {
            return Err(Error::InvalidConfig(format!(
                "expected exactly one irreversible channel, found {irreversible}"
            )));
        }
        Ok(Self { channels })
    }

    /// The three channels of the singly resonant cavity: output coupler,
    /// nonlinear conversion to the harmonic, and scattering/absorption.
    pub fn standard(gamma_tilde_c: f64, gamma_tilde_nl: f64, gamma_tilde_s: f64) -> Result<Self> {
        Self::new(vec![
            Channel {
                name: Self::COUPLING.into(),
                weight: gamma_tilde_c,
                irreversible: false,
            },
            Channel {
                name: Self::NONLINEAR.into(),
                weight: gamma_tilde_nl,
                irreversible: false,
            },
            Channel {
                name: Self::SCATTERING.into(),
                weight: gamma_tilde_s,
                irreversible: true,
            },
        ])
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn weight(&self, name: &str) -> Result<f64> {
        self.channels
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.weight)
            .ok_or_else(|| Error::UnknownChannel(name.to_string()))
    }

    /// Full output spectra of channel `name`: `1 + γ̃_n :S_ref:`.
    pub fn spectrum(&self, name: &str, s_ref: NoisePair) -> Result<NoisePair> {
        let w = self.weight(name)?;
        Ok(NoisePair {
            minus: scale_channel(w, s_ref.minus),
            plus: scale_channel(w, s_ref.plus),
        })
    }
}

fn scale_channel(weight: f64, s: f64) -> f64 {
    if weight == 0.0 {
        1.0
    } else {
        1.0 + weight * s
    }
}

/// `1 + γ̃_n :S_ref:` for the named channel.
pub fn channel_spectrum(channels: &ChannelSet, which: &str, s_ref: NoisePair) -> Result<NoisePair> {
    channels.spectrum(which, s_ref)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_state_has_no_normally_ordered_noise() {
        let s = reference_spectrum(0.0, 1.3, 0.7);
        assert_eq!(s, NoisePair { minus: 0.0, plus: 0.0 });
        assert_eq!(mus_product(0.0, 2.0, 3.0), Some(1.0));
    }

    #[test]
    fn perfect_squeezing_at_instability() {
        let s = reference_spectrum(1.0, 0.0, 0.0);
        assert_eq!(s.minus, -1.0);
        assert!(s.is_divergent());
        assert_eq!(mus_product(1.0, 0.0, 0.0), None);
        assert_eq!(optimized_noise(1.0), -1.0);
    }

    #[test]
    fn optimized_noise_examples() {
        assert_eq!(optimized_noise(0.0), 0.0);
        assert!((optimized_noise(0.5) + 8.0 / 9.0).abs() < 1e-15);
        assert!((reference_spectrum(0.5, 0.0, 0.0).minus + 8.0 / 9.0).abs() < 1e-15);
        for b in [0.1, 0.33, 0.77, 0.999] {
            assert!((reference_spectrum(b, 0.0, 0.0).minus - optimized_noise(b)).abs() < 1e-14);
        }
    }

    #[test]
    fn instability_limit() {
        for b in [1.0, 1.5, 4.0] {
            assert_eq!(instability_limit_spectrum(b, 0.0), -1.0);
        }
        assert!(instability_limit_spectrum(1.0, 1e4).abs() < 1e-7);
        // Δ = 0, |B̃| = 1 sits on the manifold.
        let direct = reference_spectrum(1.0, 0.0, 2.0).minus;
        assert!((instability_limit_spectrum(1.0, 2.0) - direct).abs() < 1e-15);
        assert!((direct + 0.5).abs() < 1e-15);
        // Continuity towards ω̃ = 0.
        assert!((instability_limit_spectrum(2.0, 1e-6) + 1.0).abs() < 1e-9);
    }

    #[test]
    fn channel_set_validation() {
        assert!(ChannelSet::standard(0.5, 0.3, 0.2).is_ok());
        assert!(ChannelSet::standard(0.5, 0.3, 0.3).is_err());
        assert!(ChannelSet::standard(1.2, -0.2, 0.0).is_err());
        let two_irreversible = vec![
            Channel { name: "a".into(), weight: 0.5, irreversible: true },
            Channel { name: "b".into(), weight: 0.5, irreversible: true },
        ];
        assert!(ChannelSet::new(two_irreversible).is_err());
    }

    #[test]
    fn unknown_channel() {
        let set = ChannelSet::standard(0.5, 0.5, 0.0).unwrap();
        let s = NoisePair { minus: -1.0, plus: 1.0 };
        assert_eq!(set.spectrum("pump", s), Err(Error::UnknownChannel("pump".into())));
    }

    #[test]
    fn full_weight_channel_is_perfectly_squeezed() {
        let set = ChannelSet::standard(1.0, 0.0, 0.0).unwrap();
        let s = reference_spectrum(1.0, 0.0, 0.0);
        let out = channel_spectrum(&set, ChannelSet::COUPLING, s).unwrap();
        assert_eq!(out.minus, 0.0);
        assert!(out.is_divergent());
        // The empty channel sees vacuum.
        let nl = channel_spectrum(&set, ChannelSet::NONLINEAR, s).unwrap();
        assert_eq!(nl, NoisePair { minus: 1.0, plus: 1.0 });
    }

    #[test]
    fn complementarity_without_scattering() {
        let s = NoisePair { minus: -1.0, plus: f64::INFINITY };
        for gc in [0.1, 0.5, 0.93] {
            let set = ChannelSet::standard(gc, 1.0 - gc, 0.0).unwrap();
            let a = set.spectrum(ChannelSet::COUPLING, s).unwrap().minus;
            let b = set.spectrum(ChannelSet::NONLINEAR, s).unwrap().minus;
            assert!((a + b - 1.0).abs() < 1e-15);
        }
    }
}
