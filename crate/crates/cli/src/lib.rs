//! `sbeauty` command-line front end.
//!
//! Every command writes JSON (or CSV for `sweep`) to stdout and diagnostics
//! to stderr. Exit codes: 0 ok, 1 agreement failure, 2 usage error,
//! 3 no trial satisfied the condition.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

mod args;
mod commands;
pub mod sweep;

pub use args::Cli;
pub use sweep::{SweepParam, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// A failed command: what to print on stderr and which code to exit with.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<sbeauty_core::SimError> for Failure {
    fn from(e: sbeauty_core::SimError) -> Self {
        let code = match e {
            sbeauty_core::SimError::NoConditionedSamples => EXIT_DEGENERATE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match commands::dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
