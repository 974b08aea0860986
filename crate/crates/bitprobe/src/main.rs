use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = bitprobe::cli::Cli::parse();
    let stdout = std::io::stdout();
    let code = bitprobe::cli::run(cli, &mut stdout.lock());
    ExitCode::from(code)
}
