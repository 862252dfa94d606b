use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;
use riskcurves::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|out| out.deliver()) {
        Ok(text) => {
            if let Some(text) = text {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                    return ExitCode::from(riskcurves::EXIT_IO as u8);
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stderr().is_terminal();
            let prefix = if color { "\x1b[1;31merror\x1b[0m" } else { "error" };
            let mut msg = format!("{prefix}: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(s) = source {
                msg.push_str(&format!("\n  caused by: {s}"));
                source = s.source();
            }
            eprintln!("{msg}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
