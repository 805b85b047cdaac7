//! Command-line front end for epsgrade.
//!
//! Reports are JSON documents with sorted keys on stdout (or `-o`); `--format
//! text` renders the same document as indented `key: value` lines.

pub mod files;
mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use epsgrade::exactnum::FieldSpec;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_NOT_EPSILON_STRONG: u8 = 4;
pub const EXIT_THEOREM_VIOLATION: u8 = 5;
pub const EXIT_ACTION_AXIOM: u8 = 6;
pub const EXIT_SEARCH: u8 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "epsgrade", version, about = "Epsilon-strongly graded algebras over exact fields")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Output path; reports go to stdout when absent.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a ring or action file.
    Validate { path: PathBuf },
    /// Strong, symmetric and epsilon-strong tests with the epsilon table.
    Classify { path: PathBuf },
    /// Separability over the principal component, by every available method.
    Separability { path: PathBuf },
    /// Frobenius system and the Kadison element.
    Frobenius { path: PathBuf },
    /// Build the crossed product of an action file.
    CrossedProduct { path: PathBuf },
    /// Recover an action from an epsilon-crossed product.
    ExtractAction {
        path: PathBuf,
        /// JSON map from degree label to the section in that degree.
        #[arg(long)]
        sections: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest component enumerated over a prime field.
        #[arg(long, default_value_t = 1 << 16)]
        budget: u64,
        #[arg(long)]
        verify_roundtrip: bool,
    },
    /// Write a named example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, value_parser = files::parse_field_flag, default_value = "q")]
        field: FieldSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the separability decision with the tensor oracle on a seeded corpus.
    CorpusRun {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    DadeModified,
    DadeOriginal,
    MoritaTrivial,
    MoritaFromDade,
    GroupAlgebraZ2,
    GroupAlgebraZ3,
    GroupAlgebraKlein,
    Truncated,
    HalfAction,
    Random,
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    commands::dispatch(&cli)
}
