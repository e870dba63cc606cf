use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use mirnet_core::graphmetrics::{metrics_report, EnsembleSpec, DEFAULT_ENSEMBLE_SIZE};
use mirnet_core::inference::inference_accuracy;
use mirnet_core::Adjacency;
use serde::{Deserialize, Serialize};

use crate::io::{read_json, sibling, write_json};
use crate::{RunRecord, Status};

/// An adjacency read from a network file, a series metadata file or a bare
/// list of 0/1 rows.
pub struct LoadedGraph {
    pub adjacency: Adjacency,
    pub labels: Vec<String>,
}

pub fn load_graph(path: &Path) -> Result<LoadedGraph> {
    let value: serde_json::Value = read_json(path)?;
    let rows = match &value {
        serde_json::Value::Array(_) => value.clone(),
        serde_json::Value::Object(map) => match map.get("adjacency") {
            Some(a) => a.clone(),
            None => bail!("{} has no adjacency", path.display()),
        },
        _ => bail!("{} is neither an adjacency nor an object holding one", path.display()),
    };
    let rows: Vec<Vec<u8>> =
        serde_json::from_value(rows).with_context(|| format!("adjacency rows in {}", path.display()))?;
    let adjacency = Adjacency::from_rows(&rows)?;
    let labels: Vec<String> = match value.get("labels") {
        Some(l) => serde_json::from_value(l.clone())?,
        None => (1..=adjacency.len()).map(|i| format!("n{i}")).collect(),
    };
    if labels.len() != adjacency.len() {
        bail!(
            "{}: {} labels for a {}-node adjacency",
            path.display(),
            labels.len(),
            adjacency.len()
        );
    }
    Ok(LoadedGraph { adjacency, labels })
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MetricsArgs {
    /// Network JSON written by `infer` (or any file holding an adjacency)
    pub network: PathBuf,
    /// Randomised graphs in the small-world reference ensemble
    #[arg(long, default_value_t = DEFAULT_ENSEMBLE_SIZE)]
    pub ensemble: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output report JSON
    #[arg(short, long)]
    pub output: PathBuf,
}

impl MetricsArgs {
    pub(crate) fn inputs(&self) -> Vec<PathBuf> {
        vec![self.network.clone()]
    }

    pub(crate) fn inputs_mut(&mut self) -> Vec<&mut PathBuf> {
        vec![&mut self.network]
    }

    pub(crate) fn manifest_path(&self) -> PathBuf {
        sibling(&self.output, ".manifest.json")
    }

    pub(crate) fn redirect(&mut self, dir: &Path) {
        self.output = dir.join(self.output.file_name().unwrap_or_default());
    }
}

pub(crate) fn run_metrics(a: &MetricsArgs) -> Result<RunRecord> {
    let g = load_graph(&a.network)?;
    let ensemble = EnsembleSpec {
        size: a.ensemble,
        seed: a.seed,
    };
    let report = metrics_report(&g.adjacency, &g.labels, &ensemble)?;
    write_json(&a.output, &report)?;
    println!(
        "edges {} sigma {} assortativity {} modularity {}",
        report.n_edges, report.sigma, report.assortativity, report.modularity
    );
    Ok(RunRecord {
        outputs: vec![a.output.clone()],
        seeds: vec![("ensemble".into(), a.seed)],
    })
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    /// Ground truth: series metadata, network JSON or adjacency rows
    pub truth: PathBuf,
    /// Inferred network JSON
    pub inferred: PathBuf,
}

fn pair_list(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "none".into();
    }
    pairs
        .iter()
        .map(|(u, v)| format!("({},{})", u + 1, v + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn run_compare(a: &CompareArgs) -> Result<Status> {
    let truth = load_graph(&a.truth)?;
    let inferred = load_graph(&a.inferred)?;
    let report = inference_accuracy(&truth.adjacency, &inferred.adjacency)?;
    println!(
        "accuracy: {:.1}% ({}/{} pairs)",
        report.percentage, report.correct, report.total
    );
    println!("missed: {}", pair_list(&report.missed));
    println!("spurious: {}", pair_list(&report.spurious));
    Ok(if report.is_exact() {
        Status::Success
    } else {
        Status::Mismatch
    })
}

