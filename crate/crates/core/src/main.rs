use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use flagmotive::cli::{run, CommandRequest};

fn main() -> ExitCode {
    let request = CommandRequest::parse();
    let outcome = run(&request);
    std::io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    std::io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    ExitCode::from(outcome.exit_code as u8)
}
