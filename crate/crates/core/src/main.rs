use std::process::ExitCode;

use toffoli_shor::cli::{dispatch, CliError};

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match dispatch(std::env::args_os(), &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Args(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
