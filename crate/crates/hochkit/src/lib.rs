//! File formats, reports and the command line for `hochkit-core`.
//!
//! [`run`] executes one command line and returns the exit code together with
//! what would go to standard output and standard error.

pub mod cli;
pub mod format;
pub mod report;

use clap::Parser;

pub use format::{emit_algebra, parse_algebra_file, parse_algebra_str, Loaded};
pub use report::{Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] hochkit_core::Error),
}

/// Exit codes: success, a failed mathematical check, invalid input.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `hochkit` on `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let echo = std::iter::once("hochkit".to_string()).chain(args.iter().cloned()).collect::<Vec<_>>().join(" ");
    let cli = match cli::Cli::try_parse_from(std::iter::once("hochkit".to_string()).chain(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match cli::execute(&cli.command, echo) {
        Ok(report) => {
            let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
            let text = if cli.json { report.render_json() } else { report.render_text() };
            match report.emitted {
                Some(payload) => Outcome { code, stdout: payload, stderr: text },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
