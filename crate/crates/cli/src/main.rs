use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Widths, completeness checks and completions of convex bodies in
/// hyperbolic space.
#[derive(Parser, Debug)]
#[command(name = "hyperwidth", version)]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// Resolution `m`: vertices per generated ball or arc and rays of the
/// ball intersection.
#[derive(Args, Debug, Clone, Copy)]
struct Resolution {
    #[arg(long = "m", env = "HYPERWIDTH_M", default_value_t = 1024)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diameter, circumball, inball and extremal widths of a body.
    Info {
        body: PathBuf,
        /// Multiplies the search grid sizes.
        #[arg(long, default_value_t = 1)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One width function, either at explicit arguments or extremized.
    Width(WidthArgs),
    /// Scott completion of a body; writes the completed body.
    Complete {
        body: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the completion trace (stdout otherwise).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[arg(long, default_value_t = 10_000)]
        candidates: usize,
    },
    /// Constant-width report and completeness certificate.
    CheckCw {
        body: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        tau: f64,
        #[command(flatten)]
        res: Resolution,
    },
    /// Renders a planar scene in the Poincaré disk.
    Render {
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 512)]
        size: u32,
    },
    /// Writes a generated body.
    Gen {
        #[arg(long, value_enum)]
        shape: Shape,
        /// Diameter.
        #[arg(long = "D", alias = "d")]
        diameter: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Center of a ball in Klein coordinates (apex by default).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        center: Option<Vec<f64>>,
        #[command(flatten)]
        res: Resolution,
        #[arg(long)]
        out: PathBuf,
        /// For prop8: also write the figure scene here.
        #[arg(long)]
        scene: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Ball,
    Simplex,
    Reuleaux,
    Prop8,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Santalo,
    Fillmore,
    Leichtweiss,
    Extended,
    Jcjl,
    Gh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

#[derive(Args, Debug)]
struct WidthArgs {
    body: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Minimize or maximize over all arguments instead of evaluating.
    #[arg(long, value_enum, conflicts_with_all = ["ideal", "point", "normal", "plane"])]
    extremal: Option<Extremum>,
    /// Ideal point as a boundary direction.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    ideal: Option<Vec<f64>>,
    /// Point in Klein coordinates (boundary point for santalo and jcjl,
    /// interior point for leichtweiss).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<f64>>,
    /// Hyperplane by its hyperboloid normal, time last.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "plane")]
    normal: Option<Vec<f64>>,
    /// Hyperplane by its Klein equation `a . x = b`, given as `a1,..,an,b`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    plane: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1)]
    resolution: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
