use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use harnack::harness::TrialConfig;
use harnack_cli::{commands, CliError};

#[derive(Debug, Parser)]
#[command(name = "harnack", version, about = "Sharp Harnack bounds on the unit disc: verification, sweeps and extremal examples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every property suite and write a JSON report (exit 0 iff all pass).
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_atoms: u64,
        #[arg(long, default_value_t = 0.99)]
        rmax: f64,
        #[arg(long, default_value_t = 0.1)]
        weight_min: f64,
        #[arg(long, default_value_t = 10.0)]
        weight_max: f64,
        /// Per-suite tolerance override, NAME=VALUE; repeatable.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        workers: Option<usize>,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write classical, sharpened and extremal envelopes along [t-min, t-max] as CSV.
    Sweep {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 0.99)]
        t_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the extremal functions u1, u2 against the sharpened bounds at x.
    Extremal {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        x: f64,
    },
    /// Print the Euclidean disc and Re-interval of the hyperbolic disc of the
    /// half-plane about b with radius 2 artanh r.
    DiscImage {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify { seed, trials, max_atoms, rmax, weight_min, weight_max, tol, workers, out } => {
            let mut config = TrialConfig {
                seed,
                trials,
                max_atoms: max_atoms as usize,
                rmax,
                weight_range: (weight_min, weight_max),
                ..TrialConfig::default()
            };
            for spec in &tol {
                let (name, value) = commands::parse_tolerance(spec)?;
                config.set_tolerance(&name, value)?;
            }
            let report = commands::verify(&config, workers, out.as_deref())?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sweep { c, t_min, t_max, step, out } => {
            let n = commands::sweep(c, t_min, t_max, step, out.as_deref())?;
            eprintln!("wrote {n} rows");
            Ok(ExitCode::SUCCESS)
        }
        Command::Extremal { c, x } => {
            commands::extremal(c, x, io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DiscImage { b, r, json } => {
            commands::disc_image(b, r, json, io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
