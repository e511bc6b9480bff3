use std::process::ExitCode;

use clap::Parser;
use thurston_kit::{run, Cli, KitError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let KitError::Invariants(names) = &e {
                eprintln!("{}", serde_json::json!({ "failures": names }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
