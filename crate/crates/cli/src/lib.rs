//! `ci-opt`: command-line front end to the ci-core optimizer.
//!
//! Exit codes: 0 success; 1 usage or configuration error; 2 completed, but
//! the oracle found the model infeasible as written; 3 I/O or internal error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use error::CliError;

/// Parses `argv` (program name first), runs the command, and returns the
/// exit code. Messages go to stdout/stderr.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    commands::configure_threads()?;
    match &cli.command {
        args::Command::Run(a) => commands::run(a),
        args::Command::Oracle(a) => commands::oracle(a),
        args::Command::Reproduce(a) => commands::reproduce(a),
        args::Command::List => commands::list(),
    }
}
