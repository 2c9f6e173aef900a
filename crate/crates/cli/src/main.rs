use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use lierine::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdin = || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    };
    let report = run(&cli, &mut stdin);
    match emit(&cli, &report) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(e) = &report.error {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
