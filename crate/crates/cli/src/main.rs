use std::io::Write;
use std::process::ExitCode;

use bellchain_cli::{run, CommandConfig};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let config = match CommandConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut log = std::io::stderr();
    let result = run(&config, &mut out, &mut log);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bellchain: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
