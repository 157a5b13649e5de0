mod cli;
mod output;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quasi_core::Exec;

use crate::cli::Cli;

/// Verification passed, or the command has no verdict.
const EXIT_PASS: u8 = 0;
/// A verification found a violating pair or an unverified certificate.
const EXIT_FAIL: u8 = 1;
/// Usage or validation error.
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    };
    let outcome = match in_pool(cli.jobs, || run::run(&cli.command, exec)) {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(e)) => return usage_error(&e.to_string()),
        Err(e) => return usage_error(&e),
    };
    let rendered = match output::render(&outcome, cli.format) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(rendered.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_FAIL);
    }
    ExitCode::from(if outcome.status().is_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(jobs: Option<u16>, f: impl FnOnce() -> R + Send) -> Result<R, String> {
    match jobs {
        Some(j) if j > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| e.to_string()),
        _ => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R>(_jobs: Option<u16>, f: impl FnOnce() -> R) -> Result<R, String> {
    Ok(f())
}
