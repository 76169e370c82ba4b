//! Command-line front end for `qveto-core`.
//!
//! Subcommands: `run`, `tables`, `sweep` and `device-info`. Exit status is
//! 0 on success, 1 when `tables --check` finds a deviating row, and 2 for
//! usage or configuration errors.

mod args;
pub mod calibration;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, NoiseSpec, OutFormat};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    /// A reproduced table row deviates from its expectation.
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Simulation(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Check(_) | CliError::Simulation(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<qveto_core::Error> for CliError {
    fn from(e: qveto_core::Error) -> Self {
        match e {
            qveto_core::Error::Input(m) => CliError::Usage(m),
            qveto_core::Error::Config(m) => CliError::Config(m),
            qveto_core::Error::InvalidState(m) => CliError::Simulation(m),
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
