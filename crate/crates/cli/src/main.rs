mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use galois_census::Error;

use args::{Cli, Command};

/// Failures surfaced to the user, each with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::EnumerationTooLarge { .. }) => 2,
            CliError::Lib(
                Error::Parse { .. }
                | Error::InvalidArgument(_)
                | Error::DegreeTooSmall(_)
                | Error::UnsupportedDegree(..)
                | Error::NotMonic
                | Error::DegenerateLine
                | Error::InsufficientData(_)
                | Error::CoefficientTooLarge
                | Error::Io(_),
            )
            | CliError::Usage(_)
            | CliError::Output(_) => 1,
            CliError::Lib(_) | CliError::Invariant(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Census(a) => commands::census(a),
        Command::Classify(a) => commands::classify(a),
        Command::Surface(a) => commands::surface(a),
        Command::Lines(a) => commands::lines(a),
        Command::VerifyLemmas(a) => commands::verify_lemmas(a),
        Command::Fit(a) => commands::fit(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
