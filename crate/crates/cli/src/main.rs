mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Function-space functionals on the unit disk and numerical checks of the
/// inequalities between them. Results are written as CSV.
#[derive(Parser, Debug)]
#[command(name = "diskspace", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// CSV destination (stdout when omitted).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every randomized search.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Initial trapezoid nodes on a circle.
    #[arg(long, global = true)]
    pub angular_nodes: Option<usize>,

    /// Gauss–Legendre panels along a radius.
    #[arg(long, global = true)]
    pub radial_panels: Option<usize>,

    /// Gauss–Legendre nodes per panel.
    #[arg(long, global = true)]
    pub gauss_nodes: Option<usize>,

    /// Depth K of the boundary schedule 1 - 2^-k.
    #[arg(long, global = true)]
    pub schedule_depth: Option<usize>,

    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Radii of the sup-search grid.
    #[arg(long, global = true)]
    pub search_radii: Option<usize>,

    /// Angles of the sup-search grid.
    #[arg(long, global = true)]
    pub search_angles: Option<usize>,

    /// Random pairs drawn by the Lipschitz-quotient search.
    #[arg(long, global = true)]
    pub pair_samples: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a norm-like functional of a function.
    Norm(NormArgs),
    /// Run a built-in check or the whole suite.
    Verify(VerifyArgs),
    /// Decide boundedness of a composition operator into H².
    Compop(CompopArgs),
    /// Radial profiles for plotting and re-fitting growth exponents.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functional {
    Hardy,
    Bloch,
    LittleBloch,
    Dirichlet,
    Lipschitz,
    Oscillation,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub functional: Functional,
    /// Function spec as JSON, e.g. '{"family":"power","coeffs":[0,1]}', or a parameterless family name.
    #[arg(long)]
    pub function: String,
    /// `identity`, `logsmoothed`, or a JSON majorant spec.
    #[arg(long, default_value = "identity")]
    pub majorant: String,
    /// Exponent p; `inf` for the sup form.
    #[arg(long, default_value = "inf")]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 2.0)]
    pub mu: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all` or the id of a single check.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// List the available check ids and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct CompopArgs {
    /// Symbol map: `identity` or a JSON function spec.
    #[arg(long)]
    pub phi: String,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Integral mean M_p(r, f).
    Mean,
    /// M_2(r) / (log 1/(1-r))^{1/2} for the lacunary series with `--terms` terms.
    Sharpness,
    /// Sup of the weighted derivative on each boundary-schedule annulus.
    BlochProfile,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, default_value = "identity")]
    pub majorant: String,
    #[arg(long, default_value = "2")]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 14)]
    pub terms: usize,
    /// Smallest radius of the sweep.
    #[arg(long, default_value_t = 0.9)]
    pub from: f64,
    /// Largest radius of the sweep.
    #[arg(long, default_value_t = 0.9999)]
    pub to: f64,
    /// Radii, log-spaced in the distance to the circle.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = commands::configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
