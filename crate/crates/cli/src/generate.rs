use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use mirnet_core::datagen::{
    self, presets, CouplingSpec, GaussianBlockSpec, MapKind, NonPsdPolicy, DEFAULT_LENGTH,
    DEFAULT_TRANSIENT,
};
use mirnet_core::{Adjacency, SeriesMatrix};
use serde::{Deserialize, Serialize};

use crate::io::{read_json, sibling, write_atomic, write_json};
use crate::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Coupled circle maps (default: the 16-node preset topology)
    Cmn,
    /// Coupled logistic maps, r = 4 (default: 6 isolated nodes)
    Logistic,
    /// Two logistic 3-chains
    Triplets,
    /// Block-diagonal correlated Gaussians (default: the three preset blocks)
    Gaussians,
    /// Two independent uniform channels
    UniformPair,
    /// Two logistic maps, the second driving the first
    DirectedPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonPsd {
    Reject,
    Reflect,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    /// Built-in experiment (paper-cmn, paper-isolated, paper-triplets, paper-gaussians)
    #[arg(long, required_unless_present = "kind", conflicts_with = "kind")]
    pub preset: Option<String>,
    /// Generator family, configured by the remaining flags
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples kept after the transient
    #[arg(long)]
    pub length: Option<usize>,
    /// Coupling strength for map networks and the directed pair
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Discarded initial iterations for map networks
    #[arg(long)]
    pub transient: Option<usize>,
    /// JSON file with the 0/1 adjacency rows of a map network
    #[arg(long)]
    pub adjacency: Option<PathBuf>,
    /// Node count of an uncoupled logistic network
    #[arg(long)]
    pub nodes: Option<usize>,
    /// JSON file with a list of covariance blocks
    #[arg(long)]
    pub blocks: Option<PathBuf>,
    /// Handling of covariance blocks with negative eigenvalues
    #[arg(long, value_enum)]
    pub non_psd: Option<NonPsd>,
    /// Output CSV; metadata goes to `<stem>.meta.json` beside it
    #[arg(short, long)]
    pub output: PathBuf,
}

impl GenerateArgs {
    pub(crate) fn inputs(&self) -> Vec<PathBuf> {
        self.adjacency.iter().chain(self.blocks.iter()).cloned().collect()
    }

    pub(crate) fn inputs_mut(&mut self) -> Vec<&mut PathBuf> {
        self.adjacency.iter_mut().chain(self.blocks.iter_mut()).collect()
    }

    pub(crate) fn manifest_path(&self) -> PathBuf {
        sibling(&self.output, ".manifest.json")
    }

    pub(crate) fn redirect(&mut self, dir: &Path) {
        self.output = dir.join(self.output.file_name().unwrap_or_default());
    }
}

fn load_adjacency(path: &Path) -> Result<Adjacency> {
    let rows: Vec<Vec<u8>> = read_json(path)?;
    Adjacency::from_rows(&rows).with_context(|| format!("adjacency in {}", path.display()))
}

fn build(a: &GenerateArgs) -> Result<SeriesMatrix> {
    if let Some(name) = &a.preset {
        if a.alpha.is_some()
            || a.transient.is_some()
            || a.adjacency.is_some()
            || a.nodes.is_some()
            || a.blocks.is_some()
            || a.non_psd.is_some()
        {
            bail!("presets accept only --seed and --length");
        }
        let mut spec = presets::preset(name, a.seed)?;
        if let Some(length) = a.length {
            spec = spec.with_length(length);
        }
        return Ok(spec.generate()?);
    }
    let kind = a.kind.context("either --preset or --kind is required")?;
    let length = a.length.unwrap_or(DEFAULT_LENGTH);
    let maps = |adjacency: Adjacency, alpha: f64, map: MapKind| -> Result<SeriesMatrix> {
        Ok(datagen::gen_coupled_map_network(&CouplingSpec {
            adjacency,
            alpha,
            map,
            transient: a.transient.unwrap_or(DEFAULT_TRANSIENT),
            length,
            seed: a.seed,
        })?)
    };
    let adjacency_or = |default: Adjacency| -> Result<Adjacency> {
        match &a.adjacency {
            Some(p) => load_adjacency(p),
            None => Ok(default),
        }
    };
    let logistic = MapKind::Logistic {
        r: presets::LOGISTIC_R,
    };
    match kind {
        Kind::Cmn => maps(
            adjacency_or(presets::cmn_adjacency())?,
            a.alpha.unwrap_or(presets::CMN_ALPHA),
            MapKind::Circle {
                r: presets::CIRCLE_R,
                k: presets::CIRCLE_K,
            },
        ),
        Kind::Logistic => maps(
            adjacency_or(Adjacency::empty(a.nodes.unwrap_or(6)))?,
            a.alpha.unwrap_or(0.0),
            logistic,
        ),
        Kind::Triplets => maps(
            adjacency_or(presets::triplet_adjacency())?,
            a.alpha.unwrap_or(presets::TRIPLET_ALPHA),
            logistic,
        ),
        Kind::Gaussians => {
            let (blocks, default_policy) = match &a.blocks {
                Some(p) => (read_json(p)?, NonPsdPolicy::Reject),
                // The third preset block is indefinite as published.
                None => (presets::sigma_blocks(), NonPsdPolicy::Reflect),
            };
            let non_psd = match a.non_psd {
                Some(NonPsd::Reject) => NonPsdPolicy::Reject,
                Some(NonPsd::Reflect) => NonPsdPolicy::Reflect,
                None => default_policy,
            };
            Ok(datagen::gen_correlated_gaussians(&GaussianBlockSpec {
                blocks,
                length,
                seed: a.seed,
                non_psd,
            })?)
        }
        Kind::UniformPair => Ok(datagen::gen_uniform_pair(length, a.seed)?),
        Kind::DirectedPair => Ok(datagen::gen_directed_logistic_pair(
            a.alpha.unwrap_or(presets::TRIPLET_ALPHA),
            length,
            a.seed,
        )?),
    }
}

pub(crate) fn run(a: &GenerateArgs) -> Result<RunRecord> {
    let series = build(a)?;
    for w in &series.meta().warnings {
        log::warn!("{w}");
    }
    let mut csv = Vec::new();
    datagen::write_csv(&series, &mut csv)?;
    write_atomic(&a.output, &csv)?;
    let meta_path = sibling(&a.output, ".meta.json");
    write_json(&meta_path, &series.meta_file())?;
    println!(
        "wrote {} rows x {} channels to {}",
        series.rows(),
        series.channels(),
        a.output.display()
    );
    Ok(RunRecord {
        outputs: vec![a.output.clone(), meta_path],
        seeds: vec![("data".into(), a.seed)],
    })
}
