use thiserror::Error;

/// Errors raised by the cavity model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("value {0} is outside the domain of the dB conversion (must be > 0)")]
    NonPositivePower(f64),

    /// The inverse map from photon number to drive power has no admissible
    /// solution: the right-hand side is negative or its denominator vanishes.
    #[error(
        "infeasible operating point at n = {n}: drive-power denominator is {denominator:e}, \
         but a strictly positive value is required for a fundamental drive to hold the \
         cavity at this photon number"
    )]
    Infeasible { n: f64, denominator: f64 },

    /// The fixed point sits on the singular set where the phase equations
    /// lose their common denominator.
    #[error("phase of the fixed point at n = {n} is undetermined (denominator {denominator:e})")]
    DegeneratePhase { n: f64, denominator: f64 },

    #[error("photon number {n} is not a fixed point (|cos|^2 + |sin|^2 = {norm})")]
    NotAFixedPoint { n: f64, norm: f64 },

    #[error("root finding failed for quintic with coefficients {coefficients:?}")]
    RootFinding { coefficients: Vec<f64> },

    #[error("squeezing phase undefined: output correlation vanishes")]
    UndefinedPhase,

    #[error("unknown channel '{0}'")]
    UnknownChannel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
