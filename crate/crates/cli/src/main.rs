use std::process::ExitCode;

use clap::Parser;
use morse_cli::args::Cli;
use morse_cli::error::{EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match morse_cli::run(&cli, &mut stdout) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("morse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
