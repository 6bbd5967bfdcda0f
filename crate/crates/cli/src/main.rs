mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::{FileConfig, RunConfig};
use error::CliResult;
use output::{write_atomic, Format};

fn run(cli: Cli) -> CliResult<bool> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let cfg = RunConfig::merge(file, cli.format, cli.out.clone());
    let outcome = match &cli.command {
        Command::Verify(a) => commands::verify(a, &cfg)?,
        Command::Classify(a) => commands::classify(a)?,
        Command::Invert(a) => commands::invert(a, &cfg)?,
        Command::Branch(a) => commands::branch(a, &cfg)?,
        Command::ScanCatalog(a) => commands::scan_catalog(a, &cfg)?,
        Command::Mesh(a) => commands::mesh(a, &cfg)?,
        Command::Witness(a) => commands::witness(a)?,
        Command::MaxPrinciple(a) => commands::max_principle(a, &cfg)?,
    };
    if outcome.command == "mesh" {
        println!("{}", outcome.summary);
        return Ok(outcome.passed);
    }
    let format = match cfg.format {
        Format::Obj => return Err(error::CliError::Usage("OBJ output is only produced by `mesh`".into())),
        f => f,
    };
    let text = outcome.render(format)?;
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &text)?;
            println!("{}", outcome.summary);
        }
        None => {
            print!("{text}");
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
