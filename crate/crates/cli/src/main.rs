mod cache;
mod commands;
mod config;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::config::{Cli, Command, RunConfig, Suite};
use crate::error::{CliError, EXIT_USAGE};

fn run(cli: &Cli, config: &RunConfig) -> Result<commands::Outcome, CliError> {
    match &cli.command {
        Command::Table => commands::table(config),
        Command::Wkg { g, k } => commands::wkg(config, *g, *k),
        Command::Fg { g } => commands::fg(config, *g),
        Command::Check { suite } => match suite {
            Suite::Bm => commands::check_bm(config),
            Suite::Elsv => commands::check_elsv(config),
            Suite::Times => commands::check_times(config),
            Suite::Series => commands::check_series(config),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let result = RunConfig::from_cli(&cli).and_then(|config| {
        env_logger::Builder::new()
            .filter_level(config.log_level())
            .format_timestamp(None)
            .init();
        run(&cli, &config)
    });

    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            match outcome.mismatch {
                None => ExitCode::SUCCESS,
                Some(context) => {
                    eprintln!("hurwitz: {}", CliError::Mismatch(context));
                    ExitCode::from(error::EXIT_MISMATCH as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("hurwitz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
