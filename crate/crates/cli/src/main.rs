use std::process::ExitCode;

use clap::Parser;
use qbc_cli::args::Cli;
use qbc_cli::{commands, configure_threads, CliError};

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let report = commands::run(cli)?;
    report.emit()?;
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version also arrive here, on stdout
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
