use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = bp_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
