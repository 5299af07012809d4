//! Experiment runner behind the `cauchy-lab` binary.
//!
//! Every subcommand takes its parameters from flags, optionally overridden
//! field by field from a JSON file given with `--config`. Outputs (CSV or
//! JSON) start with a header that records the artifact version, the seed and
//! a SHA-256 of the effective configuration, so two runs of the same config
//! can be compared byte for byte below the header.

pub mod cli;
pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use std::io;

use thiserror::Error;

pub use cli::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Process exit status: 1 config, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Numerical(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl From<cauchy_core::Error> for CliError {
    fn from(e: cauchy_core::Error) -> Self {
        use cauchy_core::Error as E;
        match e {
            E::InvalidParameter(_)
            | E::OutsideDomain(_)
            | E::GridMismatch(_)
            | E::SelfIntersection(..)
            | E::DegenerateContour(_) => Self::Config(e.to_string()),
            E::NonFinite(_) | E::Convergence { .. } | E::EmptySample | E::NotOnBoundary { .. } => {
                Self::Numerical(e.to_string())
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Run one parsed invocation, writing its output where the flags say.
pub fn run(cli: &Cli) -> Result<report::Outcome> {
    commands::dispatch(cli)
}
