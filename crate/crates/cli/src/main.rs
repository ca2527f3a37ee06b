mod args;
mod commands;
mod error;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

const THREADS_VAR: &str = "REFINERY_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_VAR} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn write_body(out: Option<&std::path::Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let (outcome, out): (Outcome, _) = match &cli.command {
        Command::VerifyHexagon(a) => (commands::verify_hexagon(a)?, a.output.out.as_deref()),
        Command::Scan(a) => (commands::scan_cmd(a)?, a.output.out.as_deref()),
        Command::Inspect(a) => (commands::inspect(a)?, a.output.out.as_deref()),
        Command::Svg(a) => {
            let inst = refinery_core::build_hexagon_instance()
                .map_err(|e| CliError::Defect(format!("instance construction failed: {e}")))?;
            let body = svg::render(&inst, &a.form, a.size)?;
            (
                Outcome {
                    body,
                    exit_code: 0,
                    notes: Vec::new(),
                },
                a.out.as_deref(),
            )
        }
    };
    write_body(out, &outcome.body)?;
    for note in &outcome.notes {
        eprintln!("refinery: {note}");
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("refinery: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
