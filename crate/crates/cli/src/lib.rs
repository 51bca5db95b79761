//! The `maltcat` command line: loading fixtures, running checks, the
//! reflection and coreflection, and the acceptance suite.

pub mod commands;
pub mod generate;
pub mod report;
pub mod suite;
pub mod workspace;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::{RunReport, EXIT_CHECK_FAILED, EXIT_MALFORMED, EXIT_OK};
pub use workspace::Workspace;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] maltcat_core::Error),
    #[error("cannot read `{0}`: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("no {0} named `{1}`")]
    Unknown(&'static str, String),
    #[error("{0} `{1}` is defined twice")]
    Duplicate(&'static str, String),
    #[error("algebra `{0}` is defined twice with different tables")]
    Conflict(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if workspace::is_mathematical(e) => EXIT_CHECK_FAILED,
            _ => EXIT_MALFORMED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Smoke,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    CyclicGroup,
    SymmetricGroup3,
    GroupoidFromHom,
    DiscreteDouble,
    VerticallyDiscreteDouble,
    HorizontallyDiscreteDouble,
}

#[derive(Debug, Parser)]
#[command(
    name = "maltcat",
    version,
    about = "Finite Mal'tsev algebras, double groupoids and 2-groupoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON fixture files loaded on top of the bundled corpus.
    #[arg(long = "in", value_name = "FILE", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Where to write the produced document (reflect, coreflect, generate)
    /// or a copy of the report (other commands).
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest carrier any construction may allocate.
    #[arg(long, value_name = "N", env = "MALTCAT_MAX_SIZE", global = true)]
    pub max_size: Option<usize>,
    /// Run the exhaustive universal-property enumerations.
    #[arg(long, global = true)]
    pub verify_universal: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a named algebra, homomorphism, congruence, graph or double graph.
    Check { target: String },
    /// Reflect a double groupoid onto 2-groupoids.
    Reflect { double: String },
    /// Coreflect a double groupoid onto 2-groupoids.
    Coreflect { double: String },
    /// The term-condition commutator of two congruences (`identity` and
    /// `full` are always available).
    Commutator { algebra: String, r: String, s: String },
    /// Write a fixture file.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        /// Group order for cyclic-group and discrete-double.
        #[arg(long)]
        n: Option<usize>,
        /// Order of the arrow group `Z_g`.
        #[arg(long)]
        g: Option<usize>,
        /// Order of the object group `Z_h`.
        #[arg(long)]
        h: Option<usize>,
        /// Multiplier of the homomorphism `Z_g -> Z_h`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the acceptance criteria on the bundled and loaded fixtures.
    Suite {
        #[arg(long, value_enum, default_value_t = Level::Smoke)]
        level: Level,
    },
}

/// What a run produced: the report, and optionally a document that goes to
/// `--out` (or to stdout when no path is given).
pub struct Outcome {
    pub report: RunReport,
    pub document: Option<String>,
}

/// The bundled corpus plus the `--in` files. The size limit applies to the
/// files only.
pub fn load_workspace(cli: &Cli) -> Result<Workspace, CliError> {
    let mut ws = Workspace::bundled();
    with_limit(cli, || {
        for path in &cli.inputs {
            ws.load_file(path)?;
        }
        Ok(ws)
    })
}

fn with_limit<T>(cli: &Cli, f: impl FnOnce() -> T) -> T {
    let limit = cli.max_size.unwrap_or_else(maltcat_core::limits::max_size);
    maltcat_core::limits::with_max_size(limit, f)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ws = load_workspace(cli)?;
    with_limit(cli, || commands::dispatch(&ws, cli))
}
