//! `gdoa` — classify and build unitary irreducible representations of
//! generalized deformed oscillator algebras.
//!
//! Exit codes: 0 success (including a NonUnitary classification),
//! 2 input/domain error (JSON error object on stdout),
//! 3 verification or table-regression failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gdoa_core::Error;

#[derive(Parser)]
#[command(name = "gdoa", version, about = "Deformed oscillator algebra unirrep toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a candidate representation (nu0, c) into BFB / BFA / FD /
    /// UB / NonUnitary.
    Classify(ClassifyArgs),
    /// Reproduce the published classification table for a built-in family
    /// at its pinned sample points; exit 3 on any mismatch.
    Table(TableArgs),
    /// Build the ladder-operator matrix representation and dump it.
    Rep(RepArgs),
    /// Build (or load) a representation and check the defining relations
    /// against a residual threshold; exit 3 when exceeded.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    ArikCoon,
    ChaturvediSrinivasan,
    TammDancoff,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Float,
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub struct AlgebraArgs {
    /// Built-in family.
    #[arg(long, value_enum)]
    pub algebra: Family,
    /// Quommutator deformation parameter (Arik-Coon, Tamm-Dancoff).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Geometric base of G (Chaturvedi-Srinivasan).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
}

#[derive(Args)]
pub struct PointArgs {
    /// Reference point of the candidate ladder.
    #[arg(long, allow_hyphen_values = true)]
    pub nu0: String,
    /// Casimir eigenvalue.
    #[arg(long, conflicts_with = "lambda0", allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Lowest-weight eigenvalue of a†a at nu0 (alternative to --c).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<String>,
    /// Scan half-width.
    #[arg(long, default_value_t = 64)]
    pub window: i64,
    /// Zero-detection tolerance (float mode).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    /// Accept non-integer nu0 for Arik-Coon q < 0 when c = (q-1)^{-1}
    /// makes lambda_n independent of nu0.
    #[arg(long)]
    pub ub_override: bool,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub algebra: Family,
    /// Mismatch tolerance on the lambda deviation column.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct RepArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub point: PointArgs,
    /// Truncation dimension (ignored for FD, which is exact).
    #[arg(long, default_value_t = 8)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Verify a previously dumped JSON representation instead of
    /// building one; all construction flags are ignored.
    #[arg(long)]
    pub from_file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub algebra: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu0: Option<String>,
    #[arg(long, conflicts_with = "lambda0", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub window: i64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 8)]
    pub dim: usize,
    #[arg(long)]
    pub ub_override: bool,
    /// Maximum acceptable residual.
    #[arg(long, default_value_t = 1e-10)]
    pub threshold: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => commands::cmd_classify(&args),
        Command::Table(args) => commands::cmd_table(&args),
        Command::Rep(args) => commands::cmd_rep(&args),
        Command::Verify(args) => commands::cmd_verify(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let doc = output::obj(vec![(
                "error",
                output::obj(vec![
                    ("code", serde_json::Value::String(err.code().to_string())),
                    ("message", serde_json::Value::String(err.to_string())),
                ]),
            )]);
            println!("{}", output::render(&doc));
            ExitCode::from(2)
        }
    }
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::ArikCoon => "arik-coon",
            Family::ChaturvediSrinivasan => "chaturvedi-srinivasan",
            Family::TammDancoff => "tamm-dancoff",
        }
    }
}

/// Flags whose misuse is an input error (exit 2), reported through the
/// same JSON error object as domain errors.
pub fn input_error(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
