use std::process::ExitCode;

use clap::Parser;
use torvanish_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(execute(&cli))
}
