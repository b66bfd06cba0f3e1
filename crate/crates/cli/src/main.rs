//! `evoalg`: evolution algebras of graphs from the command line.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use evoalg::AlgebraKind;

use crate::input::InputError;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "evoalg", version, about = "Evolution algebras of graphs")]
struct Cli {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized check.
    #[arg(long, global = true, env = "EVOALG_SEED", default_value_t = 0)]
    seed: u64,

    /// Residual tolerance for homomorphism checks.
    #[arg(long, global = true, default_value_t = evoalg::WITNESS_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file or generator spec such as `cycle:5` or `sstree:2,3@r=4`.
    graph: String,

    /// Truncation radius for lazy graphs.
    #[arg(long)]
    radius: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    #[value(alias = "adjacency")]
    Adj,
    #[value(alias = "random-walk", alias = "random_walk")]
    Rw,
    #[value(alias = "degree-weighted", alias = "degree_weighted")]
    Dw,
}

impl From<KindArg> for AlgebraKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Adj => AlgebraKind::Adjacency,
            KindArg::Rw => AlgebraKind::RandomWalk,
            KindArg::Dw => AlgebraKind::DegreeWeighted,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OperatorArg {
    /// Adjacency operator.
    #[value(name = "A")]
    A,
    /// Evolution operator of the chosen algebra.
    #[value(name = "C")]
    C,
    /// Transition operator of the simple random walk.
    #[value(name = "P")]
    P,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degrees, connectivity, regularity, twins and exact rank.
    Analyze(GraphArg),
    /// Decide whether the adjacency and random-walk algebras are isomorphic.
    Iso {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the witness (adj_to_rw) here when one is found.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Check a morphism file against the homomorphism identities.
    VerifyHom {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        morphism: PathBuf,
        /// Source algebra; defaults to the file's direction.
        #[arg(long, value_enum)]
        from: Option<KindArg>,
        /// Target algebra; defaults to the file's direction.
        #[arg(long, value_enum)]
        to: Option<KindArg>,
    },
    /// Product of two vectors in an evolution algebra.
    Product {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "adj")]
        algebra: KindArg,
        v: PathBuf,
        w: PathBuf,
    },
    /// Apply an operator to a vector.
    Apply {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum)]
        operator: OperatorArg,
        #[arg(long, value_enum, default_value = "adj")]
        algebra: KindArg,
        v: PathBuf,
    },
    /// Twin partition and quotient graph.
    Twins {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the quotient as an edge list here.
        #[arg(long)]
        quotient_out: Option<PathBuf>,
    },
    /// K-condition, Schur test and the degree-bound norm check.
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "adj")]
        algebra: KindArg,
        /// Degree bound M for `‖Av‖ ≤ M‖v‖`; defaults to the largest degree seen.
        #[arg(long = "M", alias = "m")]
        m: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Schur weights file (same weights on both sides); unit weights otherwise.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Unitary form of a monomial witness.
    Unitary {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Iso { .. } => "iso",
            Command::VerifyHom { .. } => "verify-hom",
            Command::Product { .. } => "product",
            Command::Apply { .. } => "apply",
            Command::Twins { .. } => "twins",
            Command::Bounds { .. } => "bounds",
            Command::Unitary { .. } => "unitary",
        }
    }
}

#[derive(Serialize)]
struct CommandEcho {
    name: &'static str,
    args: Vec<String>,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: CommandEcho,
    input_digest: String,
    seed: u64,
    results: serde_json::Value,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ErrorReport {
    schema_version: u32,
    command: CommandEcho,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

/// What a subcommand produced.
pub struct Outcome {
    pub results: serde_json::Value,
    pub summary: Vec<String>,
    pub warnings: Vec<String>,
    /// Verdict `NotIsomorphic` or a failed verification.
    pub negative: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = CommandEcho {
        name: cli.command.name(),
        args: std::env::args().skip(1).collect(),
    };
    match commands::run(&cli) {
        Ok((outcome, digest)) => {
            if cli.json {
                let report = Report {
                    schema_version: SCHEMA_VERSION,
                    command: echo,
                    input_digest: digest,
                    seed: cli.seed,
                    results: outcome.results,
                    warnings: outcome.warnings,
                };
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for line in &outcome.summary {
                    emit(line);
                }
                for w in &outcome.warnings {
                    eprintln!("warning: {w}");
                }
            }
            ExitCode::from(u8::from(outcome.negative))
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let report = ErrorReport {
                    schema_version: SCHEMA_VERSION,
                    command: echo,
                    error: ErrorBody {
                        kind: e.kind(),
                        message: e.to_string(),
                    },
                };
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::from(2)
        }
    }
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

/// Used by `commands` to return usage errors.
fn usage<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError::Usage(msg.into()))
}
