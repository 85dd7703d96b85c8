//! `waring`: exact three-term decompositions of trace-zero rational matrices.
//!
//! Exit status: 0 on success, 1 on a contract violation or failed check, 2
//! when a bounded witness search runs out of budget.

mod args;
mod commands;
mod failure;
mod files;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use failure::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(Failure::Usage(first_line(&e.to_string()))),
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    eprintln!("error[{}]: {}", f.kind(), f);
    ExitCode::from(f.exit_code())
}

fn first_line(s: &str) -> String {
    s.lines()
        .map(|l| l.trim_start_matches("error: ").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("invalid arguments")
        .to_string()
}
