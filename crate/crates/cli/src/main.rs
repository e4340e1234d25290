use std::process::ExitCode;

use clap::Parser;

use curvatom::config::{Cli, Command};
use curvatom::emit::write_out;
use curvatom::{commands, verify, CliError};

fn run(cli: &Cli) -> Result<(), CliError> {
    let (text, out, failure) = match &cli.command {
        Command::Spectrum(a) => (commands::spectrum(a)?, a.output.out.as_deref(), None),
        Command::Wavefunction(a) => (commands::wavefunction(a)?, a.output.out.as_deref(), None),
        Command::Flatlimit(a) => (commands::flatlimit(a)?, a.output.out.as_deref(), None),
        Command::Verify(a) => {
            let (text, failure) = verify::verify(a)?;
            (text, a.out.as_deref(), failure)
        }
    };
    write_out(&text, out)?;
    failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("curvatom: error[{}]: {}", e.reason(), e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_code())
        }
    }
}
