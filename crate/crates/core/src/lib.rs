//! Quantum noise of a singly resonant second-order nonlinear cavity.
//!
//! The fundamental mode is resonant; the harmonic is not and enters only
//! through effective absorptive and dispersive nonlinearities whose
//! strengths depend on the phase mismatch. The crate computes fixed points,
//! their stability, squeezing spectra of both outputs, and optimum paths
//! through parameter space.

pub mod config;
pub mod coupling;
pub mod db;
pub mod error;
pub mod normalize;
pub mod optimize;
pub mod paths;
pub mod reference;
pub mod spectra;
pub mod stability;
pub mod steady_state;

pub use config::CavityConfig;
pub use coupling::{coupling_factors, CouplingFactors};
pub use db::{to_db, Decibels};
pub use error::{Error, Result};
pub use normalize::{EffectiveGain, HatPoint, NormalizedParams};
pub use spectra::{Mode, Normalization, SpectrumResult};
pub use stability::StabilityReport;
pub use steady_state::{fixed_points, SteadyState};
