//! Command-line frontend: versioned JSON formats for algebras, complexes
//! and wall data, the built-in example library, and deterministic JSON
//! reports.

pub mod commands;
pub mod formats;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{run, Outcome};

/// Why a command could not produce a positive report.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Invalid(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "koszulkit", version, about = "Koszul duality for graded quiver algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an algebra and validate associativity and grading.
    Check { algebra: PathBuf },
    /// Koszulity certificate, Ext dimensions and the quadratic-dual cross-check.
    Koszul {
        algebra: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Compute the Koszul dual A! and optionally write its algebra file.
    Dual {
        algebra: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the Koszul duality functor to a complex or a standard object.
    Dualize {
        algebra: PathBuf,
        /// A complex file over the algebra.
        #[arg(long, conflicts_with = "object", required_unless_present = "object")]
        complex: Option<PathBuf>,
        /// `simple:VERTEX` or `projective:VERTEX`.
        #[arg(long)]
        object: Option<String>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Compare duality-after-translation with truncation-after-duality.
    VerifySquare {
        wall: PathBuf,
        /// Comma-separated list of `simples`, `projectives`, `seeded:N`.
        #[arg(long, default_value = "simples")]
        testset: String,
        #[arg(long, env = "KOSZULKIT_SEED")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// The built-in example library.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Emit {
        name: String,
        /// Directory to write `NAME.json` into; standard output otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
