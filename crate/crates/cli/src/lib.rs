//! Library side of the `cavsq` command-line tool.

pub mod commands;
pub mod config_file;
pub mod figures;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}: {message}")]
    Config {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Model(#[from] cavsq::Error),

    #[error("summary check failed: {0}")]
    Check(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for usage errors, 3 for infeasible physics, 4 for numerical
    /// failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        use cavsq::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 2,
            CliError::Model(e) => match e {
                E::InvalidConfig(_) | E::UnknownChannel(_) => 2,
                E::Infeasible { .. }
                | E::DegeneratePhase { .. }
                | E::NotAFixedPoint { .. }
                | E::UndefinedPhase
                | E::NonPositivePower(_) => 3,
                E::RootFinding { .. } => 4,
            },
            CliError::Check(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
