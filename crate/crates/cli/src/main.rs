mod args;
mod curve;
mod output;
mod run;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use nse_core::models::CATALOG;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or a model/method the command cannot handle (exit 2).
    Usage(String),
    /// At least one verification case failed (exit 1).
    Verification(String),
    /// The integrator produced non-finite values or broke down (exit 3).
    Abort(String),
    /// An output could not be written (exit 2).
    Io(String),
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Abort(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Abort(m) => write!(f, "numerical abort: {m}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

fn list() {
    println!("{:<16} {:<18} {:<22} construction", "family", "parameters", "dimension");
    for entry in CATALOG.iter() {
        println!(
            "{:<16} {:<18} {:<22} {}",
            entry.name,
            entry.parameters.join(", "),
            entry.dimension,
            entry.construction
        );
    }
}

/// Caps rayon at `NSE_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("NSE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("NSE_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(CliError::usage)
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::List => {
            list();
            Ok(())
        }
        Command::Curve(a) => curve::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Evolve(a) => run::run_evolve(&a),
        Command::Collide(a) => run::run_collide(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
