use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use gamma_fourier::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run(&cli, &mut out);
    ExitCode::from(code as u8)
}
