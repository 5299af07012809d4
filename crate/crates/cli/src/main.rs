use std::process::ExitCode;

use cauchy_lab::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Malformed flags are configuration errors; help and version are not errors.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("cauchy-lab: one or more checks failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("cauchy-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
