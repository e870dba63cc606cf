use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use mirnet_core::datagen::{self, derive_seed};
use mirnet_core::estimator::{MirEstimator, DEFAULT_HORIZON};
use mirnet_core::inference::{self, order_pairs, DEFAULT_GAP};
use mirnet_core::{Error, SeriesMatrix};
use serde::{Deserialize, Serialize};

use crate::io::{with_suffix, write_atomic, write_json};
use crate::RunRecord;

/// Default coupling of the directed reference pair.
pub const DEFAULT_REFERENCE_ALPHA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    /// Jump threshold on the ordered values
    None,
    /// Threshold at the value of an attached i.i.d. uniform pair
    Uniform,
    /// Threshold at the value of an attached driven logistic pair
    Directed,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct InferArgs {
    /// CSV with one column per channel
    pub input: PathBuf,
    /// The CSV has no header row
    #[arg(long)]
    pub no_header: bool,
    /// Convert prices to log-returns first
    #[arg(long)]
    pub log_returns: bool,
    #[arg(long, value_enum, default_value_t = ReferenceKind::None)]
    pub reference: ReferenceKind,
    /// Minimum jump in the ordered values for the jump threshold
    #[arg(long, default_value_t = DEFAULT_GAP)]
    pub gap: f64,
    /// Upper bound on the grid sizes swept
    #[arg(long)]
    pub grid_cap: Option<usize>,
    /// Iterations over which cell expansion is measured
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    pub horizon: usize,
    /// Seed for the reference pair
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coupling of the directed reference pair
    #[arg(long, default_value_t = DEFAULT_REFERENCE_ALPHA)]
    pub reference_alpha: f64,
    /// Output prefix for .mir.json, .pairs.tsv, .network.json, .edges.csv
    #[arg(short, long)]
    pub output: PathBuf,
}

impl InferArgs {
    pub(crate) fn inputs(&self) -> Vec<PathBuf> {
        vec![self.input.clone()]
    }

    pub(crate) fn inputs_mut(&mut self) -> Vec<&mut PathBuf> {
        vec![&mut self.input]
    }

    pub(crate) fn manifest_path(&self) -> PathBuf {
        with_suffix(&self.output, ".manifest.json")
    }

    pub(crate) fn redirect(&mut self, dir: &Path) {
        self.output = dir.join(self.output.file_name().unwrap_or_default());
    }
}

fn prepare(a: &InferArgs) -> Result<SeriesMatrix> {
    let mut data = datagen::load_csv(&a.input, !a.no_header)?;
    if a.log_returns {
        data = datagen::log_returns(&data)?;
    }
    let ref_seed = derive_seed(a.seed, 0);
    let reference = match a.reference {
        ReferenceKind::None => return Ok(data),
        ReferenceKind::Uniform => datagen::gen_uniform_pair(data.rows(), ref_seed)?,
        ReferenceKind::Directed => {
            datagen::gen_directed_logistic_pair(a.reference_alpha, data.rows(), ref_seed)?
        }
    };
    Ok(datagen::attach_reference_pair(&data, &reference)?)
}

pub(crate) fn run(a: &InferArgs) -> Result<RunRecord> {
    let data = prepare(a)?;
    let estimator = MirEstimator {
        horizon: a.horizon,
        grid_cap: a.grid_cap,
    };
    let analysis = estimator.estimate(&data)?;
    for w in &analysis.warnings {
        log::warn!("{w}");
    }
    let mir = &analysis.matrix;
    let ordered = order_pairs(mir);

    let mir_path = with_suffix(&a.output, ".mir.json");
    write_json(&mir_path, &analysis.to_file())?;
    let mut tsv = String::from("pair\tvalue\treference\n");
    for p in &ordered {
        let is_ref = mir.is_reference_channel(p.left) || mir.is_reference_channel(p.right);
        writeln!(tsv, "{}\t{}\t{}", mir.pair_label(p.pair), p.value, u8::from(is_ref))?;
    }
    let pairs_path = with_suffix(&a.output, ".pairs.tsv");
    write_atomic(&pairs_path, tsv.as_bytes())?;
    let mut outputs = vec![mir_path, pairs_path];

    let decision = match a.reference {
        ReferenceKind::None => inference::jump_threshold(&ordered, a.gap),
        _ => inference::reference_threshold(mir),
    };
    let decision = match decision {
        Err(e @ Error::NoAbruptChange { .. }) => {
            return Err(e).context(
                "the ordered values show no clear split; retry with --reference uniform|directed or a smaller --gap",
            )
        }
        other => other?,
    };
    let network = inference::reconstruct_adjacency(mir, &decision);
    let network_path = with_suffix(&a.output, ".network.json");
    write_json(&network_path, &network.to_file())?;
    let edges_path = with_suffix(&a.output, ".edges.csv");
    write_atomic(&edges_path, network.edge_list_text().as_bytes())?;
    outputs.extend([network_path, edges_path]);

    println!(
        "n_max {} grids {}..={} tau {:.4} method {} edges {}",
        analysis.n_max,
        analysis.grid_sizes.first().copied().unwrap_or(0),
        analysis.grid_sizes.last().copied().unwrap_or(0),
        decision.tau,
        serde_json::to_value(decision.method)?.as_str().unwrap_or_default(),
        network.adjacency.edge_count()
    );
    let mut seeds = Vec::new();
    if a.reference != ReferenceKind::None {
        seeds.push(("reference".into(), derive_seed(a.seed, 0)));
    }
    Ok(RunRecord { outputs, seeds })
}
