//! Command-line front end for the `greenseq` library.
//!
//! [`run`] renders a whole command into a string and an exit status so the
//! binary stays a thin shell and tests can drive every verb in-process.

pub mod commands;
pub mod presets;
pub mod quiver_file;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{run, Outcome};
pub use quiver_file::QuiverFile;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const NEGATIVE: i32 = 2;
    pub const INCOMPLETE: i32 = 3;
    pub const NOT_TAME: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("incomplete search: {0}")]
    Incomplete(String),
    #[error("not tame: {0}")]
    NotTame(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Internal(_) => exit::INPUT,
            CliError::Incomplete(_) => exit::INCOMPLETE,
            CliError::NotTame(_) => exit::NOT_TAME,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "greenseq",
    version,
    about = "Maximal green sequences of valued quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Input {
    /// Quiver JSON file (`-` for stdin)
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    pub file: Option<PathBuf>,
    /// Use a named preset instead of a file
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// Depth bound for the search (default 4 n^2)
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Cap on stored sequences
    #[arg(long, default_value_t = greenseq::search::SearchConfig::DEFAULT_MAX_COUNT)]
    pub max_count: usize,
    /// Re-run at twice the depth and require the same MGS set
    #[arg(long)]
    pub stability_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List maximal green sequences
    Enum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: RunConfig,
        /// Print every extended matrix along each sequence
        #[arg(long)]
        trails: bool,
    },
    /// Check that the MGS lengths form an interval
    Nogap {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Polygonal deformation classes
    Classes {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Regular clusters along MGS trails (tame quivers)
    Regular {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Oriented exchange graph of the MGS trails in DOT
    Graph {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Print a preset as quiver JSON
    Preset { name: String },
}
