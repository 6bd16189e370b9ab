#![allow(dead_code)]

use cavsq::CavityConfig;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random configuration with both drives on.
pub fn random_config(r: &mut ChaCha8Rng) -> CavityConfig {
    CavityConfig {
        gamma_c: r.gen_range(0.3..1.0),
        gamma_s: r.gen_range(0.0..0.5),
        delta: r.gen_range(-2.0..2.0),
        nu: r.gen_range(0.1..1.0),
        dkl: r.gen_range(-8.0..8.0),
        alpha_in_mod: r.gen_range(0.1..2.0),
        alpha_in_phase: r.gen_range(-PI..PI),
        beta_in_mod: r.gen_range(0.0..0.6),
        beta_in_phase: r.gen_range(-PI..PI),
    }
}
