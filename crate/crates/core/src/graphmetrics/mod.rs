//! Structural metrics of undirected graphs: degrees and components,
//! clustering and path length, small-world sigma against a degree-preserving
//! random ensemble, degree assortativity and greedy modularity.

mod assortativity;
mod modularity;
mod smallworld;
mod structure;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

pub use assortativity::assortativity;
pub use modularity::{modularity, modularity_partition, Partition};
pub use smallworld::{
    rewire_degree_preserving, rewired_ensemble, small_world_sigma, EnsembleSpec, SmallWorld,
    DEFAULT_ENSEMBLE_SIZE,
};
pub use structure::{
    average_clustering, average_path_length, basic_stats, clustering_and_path, connected_components,
    largest_component, local_clustering, BasicStats,
};

/// A scalar that some graphs cannot support; carries the reason if so.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Measure {
    Defined { value: f64 },
    Undefined { reason: String },
}

impl Measure {
    pub fn defined(value: f64) -> Self {
        Measure::Defined { value }
    }

    pub fn undefined(reason: impl Into<String>) -> Self {
        Measure::Undefined {
            reason: reason.into(),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Measure::Defined { value } => Some(*value),
            Measure::Undefined { .. } => None,
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Measure::Defined { value } => write!(f, "{value:.4}"),
            Measure::Undefined { reason } => write!(f, "undefined ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub labels: Vec<String>,
    pub n_nodes: usize,
    pub n_edges: usize,
    pub degree_sequence: Vec<usize>,
    pub n_components: usize,
    pub largest_component_size: usize,
    pub clustering: f64,
    /// Mean shortest path over the largest component only.
    pub avg_path_length: f64,
    pub sigma: Measure,
    pub clustering_rand: Option<f64>,
    pub path_length_rand: Option<f64>,
    pub assortativity: Measure,
    pub modularity: Measure,
    pub communities: BTreeMap<String, usize>,
    pub ensemble: EnsembleSpec,
}

/// All structural metrics of `adj`, whose nodes are named by `labels`.
pub fn metrics_report(adj: &Adjacency, labels: &[String], ensemble: &EnsembleSpec) -> Result<MetricsReport> {
    if labels.len() != adj.len() {
        return Err(Error::SizeMismatch(labels.len(), adj.len()));
    }
    let basic = basic_stats(adj)?;
    let sw = small_world_sigma(adj, ensemble)?;
    let (modularity, communities) = if basic.n_edges == 0 {
        (Measure::undefined("graph has no edges"), (0..adj.len()).collect())
    } else {
        let p = modularity_partition(adj)?;
        (Measure::defined(p.q), p.communities)
    };
    Ok(MetricsReport {
        labels: labels.to_vec(),
        n_nodes: adj.len(),
        n_edges: basic.n_edges,
        degree_sequence: basic.degrees,
        n_components: basic.components.len(),
        largest_component_size: largest_component(adj).len(),
        clustering: sw.clustering,
        avg_path_length: sw.path_length,
        sigma: sw.sigma,
        clustering_rand: sw.clustering_rand,
        path_length_rand: sw.path_length_rand,
        assortativity: assortativity(adj)?,
        modularity,
        communities: labels.iter().cloned().zip(communities).collect(),
        ensemble: sw.ensemble,
    })
}
