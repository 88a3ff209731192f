use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tropical_heights::{run, Cli, EXIT_INPUT};

const THREADS_VAR: &str = "TROPICAL_HEIGHTS_THREADS";

fn threads(cli: &Cli) -> Result<Option<usize>, String> {
    if let Some(n) = cli.threads {
        return Ok(Some(n as usize));
    }
    match std::env::var(THREADS_VAR) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_VAR}: expected a positive integer, got `{s}`")),
        },
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads(&cli) {
        Ok(Some(n)) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("pool configured once");
        }
        Ok(None) => {}
        Err(msg) => {
            eprintln!("input error: {msg}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = write!(out, "{}", report.output);
            for n in &report.notes {
                eprintln!("{n}");
            }
            for f in &report.failures {
                eprintln!("check failed: {f}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
