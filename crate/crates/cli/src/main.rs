//! `quasipoly`: decide, construct and check U-polygons in cyclotomic model sets.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 invalid input, 3 budget or
//! feasibility failure.

mod commands;
mod polyfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quasipoly_core::cyclo::MAX_MODULUS;

#[derive(Parser)]
#[command(
    name = "quasipoly",
    version = concat!(env!("CARGO_PKG_VERSION"), " (format quasipoly/1)"),
    about = "U-polygons of class at least 4 in cyclotomic model sets"
)]
pub struct Cli {
    /// Seed for randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numeric tolerance for float identity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

fn modulus() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(3..=MAX_MODULUS)
}

#[derive(Subcommand)]
pub enum Command {
    /// Is there a U-polygon with m edges and class at least 4 in Z[ζ_n]?
    Decide {
        #[arg(long, value_parser = modulus())]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Print every admissible edge number for n as a JSON array.
    Admissible {
        #[arg(long, value_parser = modulus())]
        n: u64,
    },
    /// Generate a model-set patch.
    Generate(GenerateArgs),
    /// Build a U-polygon, optionally placed inside a model set.
    Construct(ConstructArgs),
    /// Check a polygon file.
    Verify {
        input: PathBuf,
    },
    /// Write one X-ray table per direction and compare alternate vertices.
    Xray {
        input: PathBuf,
        /// Directory for the `xray_NN.csv` files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Rescaled midpoint iteration with an affine-regularity trace.
    Darboux(DarbouxArgs),
    /// Cross ratio of four slopes, edge directions, or a regular polygon.
    Crossratio(CrossRatioArgs),
    /// Render a point set and/or a polygon to SVG.
    Render {
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        polygon: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
pub struct ModelSetArgs {
    #[arg(long, value_parser = modulus())]
    pub n: Option<u64>,
    /// ttt5, ab8 or shield12.
    #[arg(long)]
    pub preset: Option<String>,
    /// `ball:R` or `box:h1,h2,...`.
    #[arg(long)]
    pub window: Option<String>,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelSetArgs,
    #[arg(long)]
    pub radius: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub model: ModelSetArgs,
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = quasipoly_core::construct::DEFAULT_K_MAX)]
    pub k_max: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct DarbouxArgs {
    /// Polygon file to iterate.
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Use a seeded random star-shaped polygon with this many vertices.
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=10_000))]
    pub random: Option<u64>,
    /// Number of double steps.
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    /// Angular tolerance for the float U-polygon test.
    #[arg(long, default_value_t = 1e-7)]
    pub angle_tolerance: f64,
}

#[derive(Args)]
pub struct CrossRatioArgs {
    /// Four slopes, `inf` for vertical.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub slopes: Option<Vec<String>>,
    /// Consecutive edge directions of the regular m-gon.
    #[arg(long)]
    pub m: Option<u64>,
    /// Four consecutive edge directions of a polygon file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// First edge index for `--input`.
    #[arg(long, default_value_t = 0)]
    pub at: usize,
}

/// Why a command did not succeed.
pub enum Failure {
    Negative,
    Invalid(anyhow::Error),
    Infeasible(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        eprintln!("error: --tolerance must be positive and finite");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
