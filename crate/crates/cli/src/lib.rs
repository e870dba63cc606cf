//! The `mirnet` command line: generate synthetic data, infer networks,
//! compute structural metrics, score against ground truth and re-run
//! recorded pipelines.
//!
//! Exit codes: 0 success, 1 comparison or reproduction mismatch, 2 usage or
//! input error.

mod generate;
mod graph;
mod infer;
pub mod io;
mod manifest;

use std::ffi::OsString;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

pub use generate::{GenerateArgs, Kind, NonPsd};
pub use graph::{load_graph, CompareArgs, LoadedGraph, MetricsArgs};
pub use infer::{InferArgs, ReferenceKind, DEFAULT_REFERENCE_ALPHA};
pub use manifest::{FileDigest, Replayable, RerunArgs, RunManifest};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MIRNET_THREADS";

#[derive(Debug, Parser)]
#[command(name = "mirnet", version, about = "Network inference from time series via the normalised mutual information rate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset as CSV plus metadata
    Generate(GenerateArgs),
    /// Estimate pairwise MIR and infer the network
    Infer(InferArgs),
    /// Structural metrics of a network
    Metrics(MetricsArgs),
    /// Score an inferred network against ground truth
    Compare(CompareArgs),
    /// Re-run a manifest and check the outputs are byte-identical
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Success => ExitCode::SUCCESS,
            Status::Mismatch => ExitCode::from(1),
        }
    }
}

/// What a file-producing command hands back for its manifest.
pub(crate) struct RunRecord {
    pub outputs: Vec<std::path::PathBuf>,
    pub seeds: Vec<(String, u64)>,
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_ENV}={value:?} is not a thread count"))?;
    // A pool built earlier in the process (e.g. by a test harness) wins.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn run(cli: Cli) -> Result<Status> {
    configure_threads()?;
    match cli.command {
        Command::Generate(a) => manifest::execute(Replayable::Generate(a)),
        Command::Infer(a) => manifest::execute(Replayable::Infer(a)),
        Command::Metrics(a) => manifest::execute(Replayable::Metrics(a)),
        Command::Compare(a) => graph::run_compare(&a),
        Command::Rerun(a) => manifest::rerun(&a),
    }
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
