use std::path::PathBuf;
use std::process::ExitCode;

use cavsq::spectra::Mode;
use cavsq_cli::commands::{
    coupling_table, parse_omega_grid, spectrum_table, steady_table, SpectrumOptions, Units,
};
use cavsq_cli::config_file::ConfigFile;
use cavsq_cli::figures::figure;
use cavsq_cli::{CliError, Result};
use clap::{Parser, Subcommand, ValueEnum};

/// Quantum noise of a singly resonant frequency-doubling cavity.
#[derive(Parser)]
#[command(name = "cavsq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coupling factors versus phase mismatch (CSV).
    Coupling {
        #[arg(long, default_value_t = -4.0 * std::f64::consts::PI, allow_hyphen_values = true)]
        dkl_min: f64,
        #[arg(long, default_value_t = 4.0 * std::f64::consts::PI, allow_hyphen_values = true)]
        dkl_max: f64,
        #[arg(long, default_value_t = 401)]
        samples: usize,
    },
    /// Fixed points of a configuration with their stability (CSV).
    Steady { config: String },
    /// Noise spectra of one output at a fixed point (CSV).
    Spectrum {
        config: String,
        #[arg(long, value_enum, default_value_t = ModeArg::B)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = UnitsArg::Raw)]
        normalization: UnitsArg,
        /// `a:b:count`, `log:a:b:count` or a comma-separated list.
        #[arg(long, default_value = "0:5:101")]
        omega_grid: String,
        /// Index of the fixed point when there are several.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        allow_unstable: bool,
    },
    /// Writes the data of one figure as figN_<series>.csv files.
    Figure {
        number: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Fundamental output.
    A,
    /// Harmonic output.
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Raw,
    Hat,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Coupling { dkl_min, dkl_max, samples } => {
            print!("{}", coupling_table(dkl_min, dkl_max, samples)?.to_csv());
        }
        Command::Steady { config } => {
            let cfg = ConfigFile::read(&config)?.resolve()?;
            print!("{}", steady_table(&cfg)?.to_csv());
        }
        Command::Spectrum { config, mode, normalization, omega_grid, root, allow_unstable } => {
            let cfg = ConfigFile::read(&config)?.resolve()?;
            let opts = SpectrumOptions {
                mode: match mode {
                    ModeArg::A => Mode::Fundamental,
                    ModeArg::B => Mode::Harmonic,
                },
                units: match normalization {
                    UnitsArg::Raw => Units::Raw,
                    UnitsArg::Hat => Units::Hat,
                },
                omega: parse_omega_grid(&omega_grid)?,
                root,
                allow_unstable,
            };
            print!("{}", spectrum_table(&cfg, &opts)?.to_csv());
        }
        Command::Figure { number, out } => {
            let fig = figure(number)?;
            print!("{}", fig.summary());
            for path in fig.write(&out)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("CAVSQ_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("CAVSQ_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
