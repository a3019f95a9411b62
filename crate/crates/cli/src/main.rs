mod commands;
mod model;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use commands::Command;

/// Thread count for the internal parallel loops; everything else is flags.
const THREADS_VAR: &str = "HCUR_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] higher_currents::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_mathematical() => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hcur", version, about = "Higher current algebras and brane charges, computed exactly")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| CliError::Config(format!("{THREADS_VAR}={v} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| {
        let report = commands::run(&cli.command)?;
        let body = match cli.format {
            Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
            Format::Text => report.text.clone(),
        };
        match &cli.output {
            Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            None => print!("{body}"),
        }
        Ok(report.ok)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("hcur: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
