//! Command-line front end: argument parsing, subcommand dispatch and output.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod reproduce;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::args::{Cli, Command, Format};
use crate::error::CliError;
use crate::output::{emit, unix_ms, Provenance, Report, ResultEnvelope};

pub const THREADS_ENV: &str = "QCORR_THREADS";

fn threads(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn dispatch(command: &Command, seed: u64) -> Result<(&'static str, serde_json::Value, Format, Report), CliError> {
    Ok(match command {
        Command::Entropy(a) => ("entropy", echo(a), Format::Json, commands::entropy(a)?),
        Command::Discord(a) => ("discord", echo(a), Format::Json, commands::discord(a, seed)?),
        Command::Sweep(a) => ("sweep", echo(a), Format::Csv, commands::sweep(a, seed)?),
        Command::IsingState(a) => ("ising-state", echo(a), Format::Json, commands::ising_state(a)?),
        Command::IsingSweep(a) => ("ising-sweep", echo(a), Format::Csv, commands::ising_sweep(a, seed)?),
        Command::Scaling(a) => ("scaling", echo(a), Format::Json, commands::scaling(a, seed)?),
        Command::Reproduce(a) => ("reproduce", echo(a), Format::Csv, reproduce::run(a, seed)?),
    })
}

fn echo<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("arguments serialize")
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let _ = env_logger::Builder::new()
        .filter_level(g.log_level.into())
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads(g.threads)? {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let started = unix_ms();
    let (name, config, default_format, report) = pool.install(|| dispatch(&cli.command, g.seed))?;
    let mut provenance = Provenance::new(name, json!({ "global": g, "command": config }), g.seed);
    if g.stamp {
        provenance.started_unix_ms = Some(started);
        provenance.finished_unix_ms = Some(unix_ms());
    }
    log::info!("{name} finished in {} ms", unix_ms() - started);
    let envelope = ResultEnvelope {
        payload: report.payload,
        provenance,
    };
    let csv = g.format.unwrap_or(default_format) == Format::Csv;
    emit(&envelope, report.table.as_ref(), csv, g.output.as_deref())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code. Errors go to stderr as one JSON line.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let result = match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            Err(CliError::Usage("missing subcommand or arguments; see --help".into()))
        }
        Err(e) => {
            let text = e.render().to_string();
            let message: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            let message = message.join(" ");
            Err(CliError::Usage(message.trim_start_matches("error: ").to_string()))
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            e.exit_code()
        }
    }
}
