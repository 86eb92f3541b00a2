use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = bpk_cli::Cli::parse();
    match bpk_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bpk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
