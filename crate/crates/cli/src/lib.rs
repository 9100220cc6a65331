//! Command-line front end for `orlicz-dynamics`.
//!
//! Exit status: 0 when a verdict is satisfied or a value was computed, 2 when
//! violated, 3 when inconclusive and 1 on usage or input errors.

pub mod commands;
pub mod config;
pub mod expr;
pub mod inputs;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use commands::{Cli, Command};

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
