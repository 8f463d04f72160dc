//! `catsim`: run the cat-state experiments and write CSV/JSON baselines.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "catsim", version, about = "Entangled cat-state experiments in a truncated Fock space")]
struct Cli {
    /// Worker threads for the numeric engine.
    #[arg(long, env = "CATSIM_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quantum-eraser conditional P densities with and without which-way information.
    Eraser(EraserArgs),
    /// Leggett-Garg combination B_lg, optionally swept over α.
    Lg(LgArgs),
    /// Prepare-and-measure dimension witness.
    Dw(DwArgs),
    /// EPR inference variances over α and a list of β.
    Epr(EprArgs),
    /// Q functions along the dimension-witness preparation sequence.
    Qfunc(QfuncArgs),
    /// Joint (X_A, X_B) densities along a rotation schedule.
    Sequence(SequenceArgs),
}

/// Flags shared by every subcommand. Unset values fall back to the
/// subcommand's own defaults.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Cat amplitude of mode A.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Cat amplitude of mode B; `epr` accepts a comma-separated list.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    /// Exponent of the number-state nonlinearity.
    #[arg(long)]
    pub k: Option<u32>,
    /// Fock cutoff for both modes.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Points per quadrature grid (odd, so that 0 is a node).
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Half-width of every quadrature grid.
    #[arg(long)]
    pub grid_span: Option<f64>,
    /// Directory for output files.
    #[arg(long, default_value = "catsim-out")]
    pub out_dir: PathBuf,
    /// Format of tabular outputs.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EraserArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct LgArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// α values as `lo:hi:step`, inclusive.
    #[arg(long, conflicts_with = "alpha")]
    pub alpha_sweep: Option<String>,
}

#[derive(Debug, Args)]
pub struct DwArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Five angles `θ,θ′,θ″,φ,φ′` as multiples of π, e.g. `pi/8,3pi/8,7pi/4,7pi/4,0`.
    #[arg(long)]
    pub angles: Option<String>,
    /// Evaluate the microscopic qubit model instead of the cat system.
    #[arg(long)]
    pub qubit_model: bool,
}

#[derive(Debug, Args)]
pub struct EprArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// α values as `lo:hi:step`, inclusive.
    #[arg(long, conflicts_with = "alpha")]
    pub alpha_sweep: Option<String>,
}

#[derive(Debug, Args)]
pub struct QfuncArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Preparation angle θ.
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true)]
    pub theta: String,
    /// Measurement angle φ.
    #[arg(long, default_value = "-pi/8", allow_hyphen_values = true)]
    pub phi: String,
    /// Points per phase-space axis.
    #[arg(long, default_value_t = 201)]
    pub q_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Bell,
    Mix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleKind {
    Single,
    Double,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// State whose joint densities are written.
    #[arg(long, value_enum, default_value_t = StateKind::Bell)]
    pub state: StateKind,
    /// Built-in rotation schedule.
    #[arg(long, value_enum, default_value_t = ScheduleKind::Single)]
    pub schedule: ScheduleKind,
    /// Explicit snapshot `t_a,t_b` in multiples of π; repeatable, replaces the schedule.
    #[arg(long)]
    pub at: Vec<String>,
    /// Write every n-th grid point of each joint density.
    #[arg(long, default_value_t = 4)]
    pub stride: usize,
}

/// A bad flag value that clap itself cannot detect.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Raised after outputs are written when an internal check failed.
#[derive(Debug)]
pub struct CheckFailure(pub Vec<String>);

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal checks failed: {}", self.0.join("; "))
    }
}

impl std::error::Error for CheckFailure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if err.downcast_ref::<CheckFailure>().is_some() {
        return 3;
    }
    match err.downcast_ref::<catsim::Error>() {
        Some(catsim::Error::InvalidAngle(_) | catsim::Error::AngleParse(_)) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(UsageError("CATSIM_THREADS must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Eraser(args) => commands::eraser(&args),
        Command::Lg(args) => commands::leggett_garg(&args),
        Command::Dw(args) => commands::dimension_witness(&args),
        Command::Epr(args) => commands::epr(&args),
        Command::Qfunc(args) => commands::qfunc(&args),
        Command::Sequence(args) => commands::sequence(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
