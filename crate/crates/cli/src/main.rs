mod args;
mod commands;
mod input;
mod report;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use report::{Failure, Outcome, RunReport};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Order(_) => "order",
        Command::Count { .. } => "count",
        Command::Enumerate { .. } => "enumerate",
        Command::Verify { .. } => "verify",
        Command::Survey { .. } => "survey",
        Command::Improve { .. } => "improve",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gen {
            family,
            n,
            seed,
            format,
            out,
        } => commands::gen(*family, *n, *seed, *format, out.as_deref()),
        Command::Order(input) => commands::order(input),
        Command::Count { input, method } => commands::count(input, *method),
        Command::Enumerate {
            input,
            out,
            limit,
            mode,
        } => commands::enumerate(input, out.as_deref(), *limit, *mode, cli.json),
        Command::Verify {
            suite,
            n_max,
            seed,
            trials,
        } => verify::run(*suite, *n_max, *seed, *trials),
        Command::Survey { n_min, n_max } => commands::survey(*n_min, *n_max),
        Command::Improve {
            direction,
            input,
            format,
            out,
        } => commands::improve(*direction, input, *format, out.as_deref()),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = dispatch(&cli);

    let (outcome, error, code) = match result {
        Ok(outcome) => {
            let code = outcome.exit_code();
            (outcome, None, code)
        }
        Err(f) => (Outcome::default(), Some(f.message), f.code),
    };

    if cli.json {
        let report = RunReport {
            command: command_name(&cli.command).to_string(),
            argv: std::env::args().skip(1).collect(),
            inputs: outcome.inputs.clone(),
            ok: code == report::EXIT_OK,
            exit_code: code,
            error: error.clone(),
            wall_time_ms: start.elapsed().as_millis() as u64,
            checks: outcome.checks,
            outputs: outcome.outputs,
        };
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        emit(&format!("{json}\n"));
    } else {
        emit(&outcome.text);
        for c in outcome.checks.iter().filter(|c| !c.passed) {
            eprintln!("invariant failed: {}: {}", c.name, c.detail);
        }
    }
    if let Some(message) = error {
        eprintln!("error: {message}");
    }
    ExitCode::from(code)
}
