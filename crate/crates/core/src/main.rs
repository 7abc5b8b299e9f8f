use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use rational_susy::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match run(cli, &mut out) {
        Ok(outcome) => outcome.exit_code(),
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
