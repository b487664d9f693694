//! `dpp`: kernels, sampling and verification suites for determinantal and
//! Pfaffian point processes.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "dpp", version, about = "Determinantal and Pfaffian point process kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScalarMode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation kernel of a (conditional) L-ensemble.
    Kernel {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarMode,
        /// `json`, `csv`, or an output path (format from the extension).
        #[arg(long)]
        out: Option<String>,
    },
    /// Pfaffian kernel of a Pfaffian L-ensemble.
    PfKernel {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarMode,
        #[arg(long)]
        out: Option<String>,
    },
    /// Multi-level kernel; Pfaffian when the spec has an `epsilon` field.
    EmKernel {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarMode,
        #[arg(long)]
        out: Option<String>,
    },
    /// Contour-integral Schur process kernel at the given points.
    SchurKernel {
        #[arg(long)]
        spec: PathBuf,
        /// `"(i,u),(j,v),..."`
        #[arg(long)]
        points: String,
        /// Largest accepted change in the last quadrature doubling.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Kernel minors against truncated enumeration for all 1- and 2-point sets.
    SchurVerify {
        #[arg(long)]
        spec: PathBuf,
        /// Defaults to levels 1..=min(T,2) and u in [-4, 4].
        #[arg(long)]
        points: Option<String>,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Runs verification suites.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        /// `exact` or a number replacing the float suites' tolerance.
        #[arg(long)]
        tol: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Exact-enumeration samples from an L-ensemble (Pfaffian when L is 2n x 2n).
    Sample {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarMode,
        #[arg(long)]
        out: Option<String>,
    },
    /// Applies GL2 moves and permutations to a tensor point or kernel witness.
    PointAction {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarMode,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Exit status classes.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Input(String),
}

impl From<dpp_core::Error> for Failure {
    fn from(e: dpp_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    use commands::*;
    match cli.command {
        Command::Kernel { spec, scalar, out } => kernel(&spec, scalar, out.as_deref()),
        Command::PfKernel { spec, scalar, out } => pf_kernel(&spec, scalar, out.as_deref()),
        Command::EmKernel { spec, scalar, out } => em_kernel(&spec, scalar, out.as_deref()),
        Command::SchurKernel {
            spec,
            points,
            tol,
            out,
        } => schur_kernel(&spec, &points, tol, out.as_deref()),
        Command::SchurVerify {
            spec,
            points,
            cutoff,
            tol,
            out,
        } => schur_verify(&spec, points.as_deref(), cutoff, tol, out.as_deref()),
        Command::Verify {
            suite,
            all: _,
            tol,
            seed,
            out,
        } => verify(suite.as_deref(), tol.as_deref(), seed, out.as_deref()),
        Command::Sample {
            spec,
            seed,
            count,
            scalar,
            out,
        } => sample(&spec, seed, count, scalar, out.as_deref()),
        Command::PointAction { spec, scalar, out } => point_action(&spec, scalar, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
