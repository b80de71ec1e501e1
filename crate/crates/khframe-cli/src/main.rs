//! Command-line front end for the khframe library.
//!
//! Every subcommand reads a scenario JSON file (or a bundled fixture name),
//! prints a short report to stdout, and writes CSV/JSON artifacts into the
//! output directory. The output is deterministic: the same scenario produces
//! byte-identical files across runs.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod cmd_params;
mod cmd_rates;
mod cmd_spectrum;
mod cmd_twolevel;
mod out;
mod scenario;
mod selftest;

/// Exit codes: 0 success, 1 I/O failure, 2 schema error, 3 accuracy or
/// tolerance failure, 4 physics-domain error.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] khframe::Error),
    #[error("{0}")]
    Tolerance(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Io(_) => 1,
            AppError::Schema(_) => 2,
            AppError::Lib(khframe::Error::Config(_)) => 2,
            AppError::Lib(khframe::Error::Accuracy { .. }) => 3,
            AppError::Tolerance(_) => 3,
            AppError::Lib(_) => 4,
        }
    }
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "khframe",
    version,
    about = "Strong-field laser-atom toolkit: derived parameters, ionization \
             rates, harmonic spectra, and a driven two-level reference model.",
    after_help = "Scenarios are JSON files; the names 'he' and 'ne' load \
                  bundled fixtures.\nExit codes: 0 ok, 1 I/O, 2 schema, \
                  3 tolerance, 4 physics domain."
)]
struct Cli {
    /// Output directory for CSV/JSON artifacts
    /// (default: $KHFRAME_OUT_DIR, then ./khframe-out).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Cap the worker threads used for per-channel and per-sample loops.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derived quantities: U_p, quiver amplitude, Keldysh gamma, threshold
    /// and cutoff orders.
    Params {
        /// Scenario file path or bundled fixture name.
        scenario: String,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Above-threshold ionization: channel table, total rate, tail bound.
    Rates {
        scenario: String,
        /// Cross-check leading channels against the momentum-shell
        /// quadrature route; fails (exit 3) past 1% deviation.
        #[arg(long)]
        oracle: bool,
    },
    /// Odd-harmonic emission: line table, damped time series, FFT.
    Spectrum {
        scenario: String,
        /// Skip the ionization-lifetime envelope on the time series.
        #[arg(long)]
        no_damping: bool,
        /// Rabi frequency in eV: splits each line into a +-rabi/2 doublet
        /// and modulates the time series.
        #[arg(long, value_name = "EV")]
        rabi: Option<f64>,
    },
    /// Driven two-level model: lab vs dressed frame, trajectory, peak table.
    Twolevel {
        /// Scenario file (supplies the drive frequency).
        scenario: String,
        /// Level splitting in eV (default: 0.1 x drive photon).
        #[arg(long, value_name = "EV")]
        splitting: Option<f64>,
        /// Peak coupling in eV (default: 1.0 x drive photon).
        #[arg(long, value_name = "EV")]
        coupling: Option<f64>,
        /// Drive cycles to integrate.
        #[arg(long, default_value_t = 100)]
        cycles: u32,
        /// Trajectory samples per drive cycle.
        #[arg(long, default_value_t = 64)]
        samples_per_cycle: usize,
    },
    /// Fast end-to-end regression against the bundled fixtures.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // A second build_global (e.g. under a test harness that reuses the
        // process) is harmless: the first pool wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let dir = out::resolve_dir(cli.out.as_deref());
    match cli.command {
        Command::Params { scenario, json } => {
            let scn = scenario::Scenario::load(&scenario)?;
            cmd_params::run(&scn, &dir, json)
        }
        Command::Rates { scenario, oracle } => {
            let scn = scenario::Scenario::load(&scenario)?;
            cmd_rates::run(&scn, &dir, oracle)
        }
        Command::Spectrum { scenario, no_damping, rabi } => {
            let scn = scenario::Scenario::load(&scenario)?;
            cmd_spectrum::run(&scn, &dir, no_damping, rabi)
        }
        Command::Twolevel { scenario, splitting, coupling, cycles, samples_per_cycle } => {
            let scn = scenario::Scenario::load(&scenario)?;
            cmd_twolevel::run(
                &scn,
                &dir,
                cmd_twolevel::Options { splitting, coupling, cycles, samples_per_cycle },
            )
        }
        Command::Selftest => selftest::run(),
    }
}
