use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

pub use config::SimulationConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] kirchhoff_nf::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(kirchhoff_nf::Error::InvalidArgument(_) | kirchhoff_nf::Error::InvalidMode(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kirchhoff-nf", version, about = "Normal-form toolkit for the Kirchhoff equation on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate the configured system and write a trajectory CSV.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the closed shell system.
    Shell {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the (f, g) flow with the pushed-forward normalised flow.
    Conjugacy {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every property suite and print verdicts.
    Verify {
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        bound_samples: Option<usize>,
        /// Add 1/7 to one coefficient family before the exact check.
        #[arg(long, value_name = "KIND")]
        corrupt_coefficient: Option<String>,
        /// Run only the named suites.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
    },
    /// Small-divisor report for every triple of shells within a radius.
    DivisorScan {
        #[arg(long, default_value_t = 2)]
        dimension: usize,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quintic coefficient tables over squared radii 1..=max.
    CoeffDump {
        #[arg(long, default_value_t = 9)]
        max_norm_sq: i64,
        /// Restrict to one family (A11, C11, F11, A12, B12, C12, D12, F12).
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact check of the homological equation on a one-dimensional mode set.
    Oracle {
        /// Positive mode magnitudes; their negatives are added.
        #[arg(long, value_delimiter = ',', default_values_t = [1i64, 2])]
        modes: Vec<i64>,
        #[arg(long, value_name = "KIND")]
        corrupt_coefficient: Option<String>,
        /// Print the quintic normal-form field as an exact table.
        #[arg(long)]
        dump: bool,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Simulate { config, out } => commands::simulate(&load(&config)?, out),
        Command::Shell { config, out } => commands::shell(&load(&config)?, out),
        Command::Conjugacy { config, out } => commands::conjugacy(&load(&config)?, out),
        Command::Verify { config, seed, samples, bound_samples, corrupt_coefficient, suites } => {
            let cfg = config.as_deref().map(load).transpose()?;
            let args = commands::VerifyArgs {
                seed: seed.or(cfg.map(|c| c.seed)),
                samples,
                bound_samples,
                corrupt: corrupt_coefficient,
                suites,
            };
            commands::verify(&args)
        }
        Command::DivisorScan { dimension, radius, out } => commands::divisor_scan(dimension, radius, out),
        Command::CoeffDump { max_norm_sq, kind, out } => commands::coeff_dump(max_norm_sq, kind.as_deref(), out),
        Command::Oracle { modes, corrupt_coefficient, dump } => {
            commands::oracle(&modes, corrupt_coefficient.as_deref(), dump)
        }
    }
}

fn load(path: &std::path::Path) -> Result<SimulationConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    SimulationConfig::parse(&text)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
