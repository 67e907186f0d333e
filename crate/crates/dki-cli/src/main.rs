//! `dki-sim` — deterministic K-identification over slow-fading Gaussian
//! channels: closed-form bound reports, sphere-packing codebook
//! construction, and Monte Carlo error experiments.
//!
//! Every output file starts with `# key = value` lines echoing the effective
//! configuration; stripped of the `# ` prefix they form a config file that
//! reproduces the run byte for byte.

mod commands;
mod config;
mod errors;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::ConfigReader;
use crate::errors::CliError;

#[derive(Parser)]
#[command(name = "dki-sim", version, about)]
struct Cli {
    /// Configuration file (`key = value` lines).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Master seed; overrides the config `seed` (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo trial count; overrides the config `sim.trials`
    /// (default 10000).
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,

    /// Worker-thread count; falls back to DKI_SIM_THREADS, then all cores.
    /// Results never depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form bounds over a grid of block lengths and exponents
    /// (writes bounds.csv).
    Bounds,
    /// Construct and validate a codebook (writes codebook.txt,
    /// validation.txt).
    Build,
    /// Monte Carlo error experiments (writes simulate_<experiment>.csv).
    Simulate,
    /// Codebook-size scaling across block lengths (writes sweep.csv).
    Sweep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("missing required flag --config".into()))?;
    let values = config::load(config_path)?;
    std::fs::create_dir_all(&cli.out)?;

    let mut reader = ConfigReader::new(&values);
    match cli.command {
        Command::Bounds => commands::bounds::run(&mut reader, &cli.out),
        Command::Build => commands::build::run(&mut reader, &cli.out, cli.seed),
        Command::Simulate => commands::simulate::run(&mut reader, &cli.out, cli.seed, cli.trials),
        Command::Sweep => commands::sweep::run(&mut reader, &cli.out, cli.seed),
    }
}

fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("DKI_SIM_THREADS") {
            Ok(s) => Some(s.trim().parse().map_err(|_| {
                CliError::Config(format!(
                    "DKI_SIM_THREADS must be a positive integer, got `{s}`"
                ))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = requested {
        if n == 0 {
            return Err(CliError::Config("thread count must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot configure the thread pool: {e}")))?;
    }
    Ok(())
}
