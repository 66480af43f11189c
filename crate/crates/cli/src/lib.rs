//! Command-line front end for octoslice: verification suites, Cauchy and
//! Taylor reconstruction experiments and table dumps.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod format;
pub mod parse;
pub mod registry;
pub mod report;
pub mod suites;

use suites::Suite;

/// A malformed invocation; exits with status 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "octoslice", version, about = "Octonionic partial-slice monogenic functions: checks and experiments")]
pub struct Cli {
    /// Arithmetic: exact rationals or binary64 floats.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run an invariant battery.
    Verify(VerifyArgs),
    /// Reconstruct f(x) from boundary values on a slice ball.
    Cauchy(CauchyArgs),
    /// Taylor coefficients, tails and reconstruction at a point.
    Taylor(TaylorArgs),
    /// The basis multiplication table as CSV.
    Table,
    /// Maximum modulus sampling demo.
    Maxmod(MaxmodArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct SliceArgs {
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    /// Integration slice: `e3` or components along e_{p+1}..e7.
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub radius: f64,
    /// Quadrature level; defaults to the pinned level for the dimension.
    #[arg(long)]
    pub level: Option<usize>,
    /// Registry name of the function.
    #[arg(long, default_value = "stem:V21")]
    pub target: String,
    /// `x_0,..,x_p,r`, with `r` measured along `--omega`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

#[derive(Args, Debug)]
pub struct CauchyArgs {
    #[command(flatten)]
    pub slice: SliceArgs,
    /// Slice of the evaluation point; defaults to `--eta`.
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(Args, Debug)]
pub struct TaylorArgs {
    #[command(flatten)]
    pub slice: SliceArgs,
    /// Highest degree kept.
    #[arg(long = "K", default_value_t = 3)]
    pub k_max: u32,
}

#[derive(Args, Debug)]
pub struct MaxmodArgs {
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long, default_value = "stem:V20")]
    pub target: String,
    /// Number of nested spheres.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
}

/// Rendered output and exit status of a successful parse.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    match &cli.command {
        Command::Verify(a) => commands::verify(cli, a),
        Command::Cauchy(a) => commands::cauchy(cli, a),
        Command::Taylor(a) => commands::taylor(cli, a),
        Command::Table => Ok(Outcome { output: commands::table(cli.json), code: 0 }),
        Command::Maxmod(a) => commands::maxmod(cli, a),
    }
}
