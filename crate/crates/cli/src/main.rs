//! `shirac` — construct impulse-train interferences from spec files and
//! compute exact expansions, event bounds, window extrema and interval
//! transformation graphs.
//!
//! All numerals in and out are exact fraction strings; output is
//! byte-deterministic for a given spec, flags and seed. Exit codes: 0 on
//! success, 1 for I/O or spec errors, 2 for domain errors.

#![allow(clippy::result_large_err)]

mod spec_file;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shirac_core::{
    existence_check, heaviside_duration, hyperperiod, max_duration, min_duration,
    transform_graph, Extremum, HeavisideMask, ImpulseInterference, MaskKind, Rational, Window,
};

use spec_file::{SpecDocument, SpecError};

#[derive(Parser)]
#[command(name = "shirac", version, about = "Exact event-bound analysis of impulse trains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtremumArg {
    Max,
    Min,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a spec into its canonical impulse list as CSV.
    Expand {
        spec: PathBuf,
        /// Window start (required for endless trains).
        #[arg(long, requires = "to")]
        from: Option<Rational>,
        /// Window end.
        #[arg(long, requires = "from")]
        to: Option<Rational>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum of the amplitudes inside a mask.
    Eval {
        spec: PathBuf,
        #[arg(long)]
        lo: Rational,
        #[arg(long)]
        hi: Rational,
        /// Mask endpoints: cc, co, oc or oo.
        #[arg(long, default_value = "cc")]
        mask: MaskKind,
    },
    /// Extremal duration for one interval length.
    Bound {
        spec: PathBuf,
        /// Interval length.
        #[arg(long)]
        d: Rational,
        #[arg(long)]
        w1: Rational,
        #[arg(long)]
        w2: Rational,
        /// max or min.
        #[arg(long)]
        kind: ExtremumArg,
        #[arg(long, default_value = "cc")]
        mask: MaskKind,
    },
    /// Full interval transformation graph as CSV.
    Graph {
        spec: PathBuf,
        #[arg(long, required_unless_present = "hyperperiod", conflicts_with = "hyperperiod")]
        w1: Option<Rational>,
        #[arg(long, required_unless_present = "hyperperiod", conflicts_with = "hyperperiod")]
        w2: Option<Rational>,
        #[arg(long)]
        kind: ExtremumArg,
        #[arg(long, default_value = "cc")]
        mask: MaskKind,
        /// Analyze one full period: window [0, P] for periodic specs.
        #[arg(long)]
        hyperperiod: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify that a spec expands to finitely many impulses everywhere.
    Check { spec: PathBuf },
    /// Cross-check the optimized paths against the naive reference.
    Verify {
        /// Run the checks on this spec instead of the bundled ones.
        spec: Option<PathBuf>,
        /// Seed for the random suite (SHIRAC_SEED overrides this).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random cases.
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
}

/// Input problems exit with 1, domain errors with 2.
pub enum CliError {
    Input(String),
    Domain(shirac_core::Error),
    Failed(String),
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<shirac_core::Error> for CliError {
    fn from(e: shirac_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_interference(path: &Path) -> Result<ImpulseInterference, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(SpecDocument::parse(&text)?.into_interference()?)
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Expand {
            spec,
            from,
            to,
            out,
        } => {
            let x = load_interference(&spec)?;
            let window = match (from, to) {
                (Some(lo), Some(hi)) => Some(Window::new(lo, hi)?),
                _ => None,
            };
            let flat = x.flatten(window.as_ref())?;
            let mut csv = String::from("position,amplitude\n");
            for imp in flat.impulses() {
                writeln!(csv, "{},{}", imp.position, imp.amplitude).expect("string write");
            }
            emit(out.as_deref(), &csv)
        }
        Command::Eval { spec, lo, hi, mask } => {
            let x = load_interference(&spec)?;
            let mask = HeavisideMask::new(lo, hi, mask)?;
            println!("{}", heaviside_duration(&x, &mask)?);
            Ok(())
        }
        Command::Bound {
            spec,
            d,
            w1,
            w2,
            kind,
            mask,
        } => {
            let x = load_interference(&spec)?;
            let window = Window::new(w1, w2)?;
            let result = match kind {
                ExtremumArg::Max => max_duration(&x, &d, &window, mask)?,
                ExtremumArg::Min => min_duration(&x, &d, &window, mask)?,
            };
            if result.window_clamped {
                eprintln!(
                    "warning: interval length {d} exceeds the window; \
                     evaluated the single mask anchored at the window start"
                );
            }
            println!("{} @ {}", result.value, result.witness);
            Ok(())
        }
        Command::Graph {
            spec,
            w1,
            w2,
            kind,
            mask,
            hyperperiod: use_period,
            out,
        } => {
            let x = load_interference(&spec)?;
            let window = if use_period {
                match hyperperiod(&x)? {
                    Some(period) => Window::new(Rational::zero(), period)?,
                    None => {
                        return Err(CliError::Domain(shirac_core::Error::Unsupported(
                            "--hyperperiod needs a fully periodic spec (every summand \
                             must contain an endless train)"
                                .into(),
                        )))
                    }
                }
            } else {
                Window::new(w1.expect("required by clap"), w2.expect("required by clap"))?
            };
            let extremum = match kind {
                ExtremumArg::Max => Extremum::Max,
                ExtremumArg::Min => Extremum::Min,
            };
            let graph = transform_graph(&x, &window, extremum, mask)?;
            let mut csv = String::from("d,value,witness\n");
            for point in &graph.points {
                writeln!(csv, "{},{},{}", point.d, point.value, point.witness)
                    .expect("string write");
            }
            emit(out.as_deref(), &csv)
        }
        Command::Check { spec } => {
            let x = load_interference(&spec)?;
            existence_check(&x)?;
            println!("ok");
            Ok(())
        }
        Command::Verify { spec, seed, cases } => {
            let seed = match std::env::var("SHIRAC_SEED") {
                Ok(value) => value
                    .parse::<u64>()
                    .map_err(|_| CliError::Input(format!("SHIRAC_SEED='{value}' is not a u64")))?,
                Err(_) => seed,
            };
            verify::run(spec.as_deref(), seed, cases)
        }
    }
}
