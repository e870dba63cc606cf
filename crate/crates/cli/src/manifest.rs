//! Run manifests: what ran, on which inputs, producing which outputs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use crate::generate::{self, GenerateArgs};
use crate::graph::{self, MetricsArgs};
use crate::infer::{self, InferArgs};
use crate::io::{read_json, sha256_file, write_json};
use crate::{RunRecord, Status};

/// Commands whose outputs a manifest can reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "options", rename_all = "lowercase")]
pub enum Replayable {
    Generate(GenerateArgs),
    Infer(InferArgs),
    Metrics(MetricsArgs),
}

impl Replayable {
    fn inputs(&self) -> Vec<PathBuf> {
        match self {
            Replayable::Generate(a) => a.inputs(),
            Replayable::Infer(a) => a.inputs(),
            Replayable::Metrics(a) => a.inputs(),
        }
    }

    fn inputs_mut(&mut self) -> Vec<&mut PathBuf> {
        match self {
            Replayable::Generate(a) => a.inputs_mut(),
            Replayable::Infer(a) => a.inputs_mut(),
            Replayable::Metrics(a) => a.inputs_mut(),
        }
    }

    fn manifest_path(&self) -> PathBuf {
        match self {
            Replayable::Generate(a) => a.manifest_path(),
            Replayable::Infer(a) => a.manifest_path(),
            Replayable::Metrics(a) => a.manifest_path(),
        }
    }

    fn redirect(&mut self, dir: &Path) {
        match self {
            Replayable::Generate(a) => a.redirect(dir),
            Replayable::Infer(a) => a.redirect(dir),
            Replayable::Metrics(a) => a.redirect(dir),
        }
    }

    fn run(&self) -> Result<RunRecord> {
        match self {
            Replayable::Generate(a) => generate::run(a),
            Replayable::Infer(a) => infer::run(a),
            Replayable::Metrics(a) => graph::run_metrics(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    #[serde(flatten)]
    pub run: Replayable,
    /// Absolute input paths with their content hashes.
    pub inputs: Vec<FileDigest>,
    pub seeds: BTreeMap<String, u64>,
    /// Output file names (relative to the manifest) with content hashes.
    pub outputs: Vec<FileDigest>,
    pub started_unix: u64,
    pub finished_unix: u64,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn digest_inputs(cmd: &Replayable) -> Result<Vec<FileDigest>> {
    cmd.inputs()
        .iter()
        .map(|p| {
            Ok(FileDigest {
                path: p.display().to_string(),
                sha256: sha256_file(p)?,
            })
        })
        .collect()
}

/// Runs a file-producing command and writes its manifest.
pub(crate) fn execute(mut cmd: Replayable) -> Result<Status> {
    for p in cmd.inputs_mut() {
        *p = p
            .canonicalize()
            .with_context(|| format!("input {}", p.display()))?;
    }
    let started_unix = unix_now();
    let inputs = digest_inputs(&cmd)?;
    let record = cmd.run()?;
    let outputs = record
        .outputs
        .iter()
        .map(|p| {
            Ok(FileDigest {
                path: p
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                sha256: sha256_file(p)?,
            })
        })
        .collect::<Result<_>>()?;
    let manifest = RunManifest {
        tool: "mirnet".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        inputs,
        seeds: record.seeds.into_iter().collect(),
        outputs,
        started_unix,
        finished_unix: unix_now(),
        run: cmd,
    };
    write_json(&manifest.run.manifest_path(), &manifest)?;
    Ok(Status::Success)
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// Manifest written by generate, infer or metrics
    pub manifest: PathBuf,
}

/// Replays a manifest in a scratch directory and compares output hashes.
pub(crate) fn rerun(a: &RerunArgs) -> Result<Status> {
    let manifest: RunManifest = read_json(&a.manifest)?;
    for (recorded, now) in manifest.inputs.iter().zip(digest_inputs(&manifest.run)?) {
        if recorded.sha256 != now.sha256 {
            bail!("input {} changed since the recorded run", recorded.path);
        }
    }
    let scratch = tempfile::tempdir()?;
    let mut cmd = manifest.run.clone();
    cmd.redirect(scratch.path());
    cmd.run()?;
    let mut status = Status::Success;
    for out in &manifest.outputs {
        let fresh = scratch.path().join(&out.path);
        let same = fresh.exists() && sha256_file(&fresh)? == out.sha256;
        println!("{} {}", if same { "identical" } else { "DIFFERS" }, out.path);
        if !same {
            status = Status::Mismatch;
        }
    }
    Ok(status)
}
