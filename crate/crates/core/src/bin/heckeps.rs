use std::process::ExitCode;

use heckeps::runner::{error_exit_code, parse_config, run, ParseFailure, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(c) => c,
        Err(ParseFailure::Clap(e)) => e.exit(),
        Err(ParseFailure::Usage(text)) => {
            eprintln!("{text}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(ParseFailure::Invalid(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {} failed: {e}", config.command);
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
