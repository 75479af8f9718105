//! `bcl`: command-line front end for the operator lab.
//!
//! Exit status: 0 on success, 1 on usage or input errors (one line on
//! stderr), 2 when a report's verdict check fails.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, OutputOpts};

fn output_opts(cmd: &Command) -> &OutputOpts {
    match cmd {
        Command::Seminorm(a) => &a.output,
        Command::Apply(a) => &a.output,
        Command::Matrix(a) => &a.output,
        Command::Spectrum(a) => &a.output,
        Command::Eigenfunction(a) => &a.output,
        Command::Classify(a) | Command::Bound(a) => &a.output,
        Command::Counterexample(a) => &a.output,
        Command::Compactness(a) => &a.output,
        Command::Essnorm(a) => &a.output,
        Command::Preimage(a) => &a.output,
    }
}

fn fail(msg: &str) -> ExitCode {
    let line = msg.lines().next().unwrap_or("unknown error");
    let line = line.strip_prefix("error: ").unwrap_or(line);
    eprintln!("bcl: error: {line}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&e.to_string()),
    };
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(msg) => return fail(&msg),
    };
    let written = match &output_opts(&cli.command).out {
        Some(path) => std::fs::write(path, &outcome.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(&outcome.body)
            .map_err(|e| format!("stdout: {e}")),
    };
    if let Err(msg) = written {
        return fail(&msg);
    }
    if outcome.check_failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
