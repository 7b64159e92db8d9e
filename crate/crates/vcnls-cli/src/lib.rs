//! Library face of the `vcnls` command-line tool.
//!
//! The binary is a thin wrapper around these modules; keeping them in a
//! library lets integration tests drive configuration parsing, report
//! generation, and the command implementations directly.

use std::fmt;

pub mod commands;
pub mod config;
pub mod output;
pub mod report;

/// Exit status when at least one check in the bundle fails.
pub const EXIT_CHECK_FAILURE: u8 = 1;
/// Exit status for configuration and usage problems.
pub const EXIT_CONFIG: u8 = 2;
/// Exit status when a numerical routine stops early (time-stepping halt,
/// quadrature breakdown, ...).
pub const EXIT_HALT: u8 = 3;

/// A fatal problem outside the normal check-pass/check-fail flow.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable, unparsable, or semantically invalid configuration, or an
    /// unwritable output directory.
    Config(String),
    /// A numerical routine could not complete.
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Numerical(_) => EXIT_HALT,
        }
    }

    pub fn config(message: impl fmt::Display) -> Self {
        Failure::Config(message.to_string())
    }

    pub fn numerical(message: impl fmt::Display) -> Self {
        Failure::Numerical(message.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration: {m}"),
            Failure::Numerical(m) => write!(f, "numerical: {m}"),
        }
    }
}

impl std::error::Error for Failure {}
