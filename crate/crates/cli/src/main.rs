mod commands;
mod config;
mod error;
mod output;
mod selftest;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gaussradon", version, about = "Gauss-Radon transforms at finite truncation")]
pub struct Cli {
    /// Run configuration (`key = value` lines, `[section]` headers); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Eigenvalue schedule: shifted | affine:a,b | power:c,s.
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Gnuplot,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform of one functional over one affine subspace.
    Transform(TransformArgs),
    /// Transform tabulated over directions and offsets.
    Sinogram(SinogramArgs),
    /// Slab constraints from a sinogram CSV.
    Recover(RecoverArgs),
    /// f_n(x) for n = 1..n_max against phi(x).
    Tower(TowerArgs),
    /// Monte Carlo mass of a dual ball at several truncations.
    Ballmass(BallmassArgs),
    /// Hermite basis functions.
    Basis {
        #[command(subcommand)]
        action: BasisAction,
    },
    /// Samples from a Gaussian measure on an affine subspace.
    Measure {
        #[command(subcommand)]
        action: MeasureAction,
    },
    /// Quick numeric checks; exit code 2 when any fails.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args, Default)]
pub struct SamplingArgs {
    /// Monte Carlo sample count.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Truncation dimension for sampling.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Gauss-Hermite nodes per dimension.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub subspace: Option<String>,
    /// closed | mc | quad
    #[arg(long)]
    pub method: Option<String>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Args)]
pub struct SinogramArgs {
    #[arg(long)]
    pub phi: Option<String>,
    /// Comma-separated coordvecs, normalized on input.
    #[arg(long)]
    pub directions: Option<String>,
    /// Use `k` planar directions (cos, sin) at angles 2 pi j / k instead.
    #[arg(long)]
    pub angles: Option<usize>,
    /// Offset grid `start:stop:steps`.
    #[arg(long)]
    pub offsets: Option<String>,
    #[arg(long)]
    pub method: Option<String>,
    /// Tabulate the planar bump of this radius instead of a functional.
    #[arg(long)]
    pub bump_radius: Option<f64>,
    /// Bump center `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    pub bump_center: Option<String>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BallmassArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    #[arg(long)]
    pub radius: Option<f64>,
    /// Comma-separated truncation dimensions.
    #[arg(long)]
    pub dims: Option<String>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Subcommand)]
pub enum BasisAction {
    /// CSV of t, phi_1..phi_N on a grid.
    Dump {
        #[arg(long)]
        n: Option<usize>,
        /// `start:stop:steps`
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeasureAction {
    /// One row per sample, one column per coordinate.
    Sample {
        #[arg(long)]
        subspace: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Samples for the Monte Carlo checks.
    #[arg(long)]
    pub n: Option<u64>,
    /// Tolerance for the deterministic checks.
    #[arg(long)]
    pub tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
