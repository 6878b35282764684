use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = blm_cli::args::Cli::parse();
    match blm_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(blm_cli::exit_code(&e) as u8)
        }
    }
}
