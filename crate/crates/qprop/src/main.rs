use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use qprop::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("qprop: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
