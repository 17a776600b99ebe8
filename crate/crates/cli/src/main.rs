mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

/// Exit status of a command that ran to completion.
pub enum Status {
    Ok,
    InvariantFailure,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Construct(a) => commands::construct::run(a),
        Command::Revenue(a) => commands::revenue::run(a),
        Command::Tbound(a) => commands::tbound::run(a),
        Command::Discretize(a) => commands::discretize::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Report(a) => commands::report::run(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::InvariantFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
