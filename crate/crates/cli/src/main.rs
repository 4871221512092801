mod commands;
mod config;
mod error;
mod output;
mod reproduce;
mod svg;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Command, RunConfig};
use error::CliError;

fn run(cli: Cli) -> Result<Vec<std::path::PathBuf>, CliError> {
    let mut cfg = RunConfig::from_args(&cli.common)?;
    match &cli.command {
        Command::Bn { normalize } => commands::bn(&cfg, normalize),
        Command::Pfdim => commands::pfdim(&mut cfg),
        Command::Classify { rate } => commands::classify(&mut cfg, rate.as_deref()),
        Command::Fit { schedule } => commands::fit(&cfg, schedule),
        Command::Dump => commands::dump(&cfg),
        Command::Reproduce { figure } => reproduce::reproduce(&cfg, *figure),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            eprintln!("{}", CliError::Usage(msg.trim().to_string()).to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
