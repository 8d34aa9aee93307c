mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eigen(args) => commands::eigen::run(args),
        Command::Wavefn(args) => commands::wavefn::run(args),
        Command::Validate(args) => commands::validate::run(args),
        Command::Ordering(args) => commands::ordering::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("pdm: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
