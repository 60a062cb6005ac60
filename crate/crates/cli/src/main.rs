#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;

use clap::{Args, Parser, Subcommand};
use commands::Outcome;
use config::{Format, Overrides, RunConfig};
use error::CliError;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Bound-state spectra of position-dependent-mass Hamiltonians with constructed potentials.
#[derive(Debug, Parser)]
#[command(name = "pdm-spectra", version)]
struct Cli {
    /// Raise log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the potential families with their closed forms.
    Families {
        /// Emit a JSON report instead of text.
        #[arg(long, conflicts_with = "format")]
        json: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Sample m(x), u(x), V, V_m and U_m on a uniform grid.
    Potential {
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Refined numerical spectrum.
    Spectrum(Overrides),
    /// Compare numerical levels against the closed-form energies.
    Validate(Overrides),
    /// Check that the spectrum does not depend on the ordering.
    SweepOrdering(Overrides),
    /// Residual convergence of the su(1,1) commutation relations.
    CheckAlgebra(AlgebraArgs),
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[command(flatten)]
    overrides: Overrides,
    /// Grid sizes of the convergence study.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Gauge shift added to the raising operator.
    #[arg(long, allow_negative_numbers = true)]
    perturb_g: Option<f64>,
    /// Smallest accepted commutator residual order.
    #[arg(long)]
    min_order: Option<f64>,
}

fn write_output(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Compute(e.to_string()))
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    let (outcome, path) = match command {
        Command::Families { json, format, output } => {
            let format = if json { Some(Format::Json) } else { format };
            (commands::families(format)?, output)
        }
        Command::Potential { overrides, samples } => {
            let mut cfg = overrides.resolve()?;
            if let Some(n) = samples {
                cfg.potential.samples = n;
            }
            let path = cfg.output.path.clone();
            (commands::potential(cfg)?, path)
        }
        Command::Spectrum(o) => with_config(o, commands::spectrum)?,
        Command::Validate(o) => with_config(o, commands::validate)?,
        Command::SweepOrdering(o) => with_config(o, commands::sweep_ordering)?,
        Command::CheckAlgebra(a) => {
            let mut cfg = a.overrides.resolve()?;
            if let Some(s) = a.sizes {
                cfg.algebra.sizes = s;
            }
            if let Some(g) = a.perturb_g {
                cfg.algebra.perturb_g = g;
            }
            if let Some(m) = a.min_order {
                cfg.algebra.min_order = m;
            }
            let path = cfg.output.path.clone();
            (commands::check_algebra(cfg)?, path)
        }
    };
    write_output(&outcome.text, path.as_ref())?;
    Ok(outcome)
}

fn with_config(
    o: Overrides,
    f: fn(RunConfig) -> Result<Outcome, CliError>,
) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let cfg = o.resolve()?;
    let path = cfg.output.path.clone();
    Ok((f(cfg)?, path))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).format_timestamp(None).init();
    match run(cli.command) {
        Ok(o) if o.pass => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
