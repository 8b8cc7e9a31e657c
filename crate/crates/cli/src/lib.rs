//! Document parsing, command dispatch and report emission for the `kgraph` binary.
//!
//! [`run`] takes the full argument list and returns the rendered report with its exit status
//! (0 pass, 1 verdict failure, 2 error), so tests can drive the tool without a subprocess.

mod commands;
pub mod document;
pub mod report;

use std::time::Instant;

use clap::Parser;

pub use commands::{execute, Cli, Command};
pub use document::{emit_cocycle, emit_graph, parse_cocycle, parse_graph, CocycleDocument, CocycleKind, GraphDocument};
pub use report::{Format, Report, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error{}: {reason}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, reason: String },
    #[error("invalid graph: {0}")]
    Validation(kgraph::Error),
    #[error(transparent)]
    Core(#[from] kgraph::Error),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{0}")]
    Usage(String),
}

/// Output and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Runs the tool on `argv` (without the program name).
pub fn run(argv: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(std::iter::once("kgraph".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => return Outcome { output: e.render().to_string(), code: e.exit_code() },
    };
    let start = Instant::now();
    let report = execute(&cli, argv).unwrap_or_else(|e| {
        let seed = cli.command.is_seeded().then(|| cli.seed.unwrap_or(0));
        let mut r = Report::new(cli.command.name(), argv, seed);
        r.verdict = Verdict::Error;
        r.set("error", e.to_string());
        r
    });
    let elapsed = (cli.format == Format::Text).then(|| start.elapsed().as_millis());
    Outcome { output: report.emit(cli.format, elapsed), code: report.exit_code() }
}
