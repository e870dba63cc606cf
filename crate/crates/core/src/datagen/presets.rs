//! Built-in experiment definitions.
//!
//! | Name | Data |
//! |------|------|
//! | `paper-cmn` | 16 circle maps, `a = 0.03`, `r = 0.35`, `K = 6.9115` |
//! | `paper-isolated` | 6 uncoupled logistic maps, `r = 4` |
//! | `paper-triplets` | two 3-node logistic chains, `a = 0.1`, `r = 4` |
//! | `paper-gaussians` | three independent 3-variate normal blocks |

use serde::{Deserialize, Serialize};

use super::gaussian::{gen_correlated_gaussians, GaussianBlockSpec, NonPsdPolicy};
use super::maps::{gen_coupled_map_network, CouplingSpec, MapKind};
use super::{DEFAULT_LENGTH, DEFAULT_TRANSIENT};
use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::series::SeriesMatrix;

pub const PRESET_NAMES: [&str; 4] = ["paper-cmn", "paper-isolated", "paper-triplets", "paper-gaussians"];

pub const CIRCLE_R: f64 = 0.35;
pub const CIRCLE_K: f64 = 6.9115;
pub const CMN_ALPHA: f64 = 0.03;
pub const TRIPLET_ALPHA: f64 = 0.1;
pub const LOGISTIC_R: f64 = 4.0;

/// Undirected edges (1-based) of the 16-node circle-map network.
pub const CMN_EDGES: [(usize, usize); 23] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 3),
    (3, 8),
    (4, 5),
    (5, 12),
    (6, 7),
    (7, 8),
    (7, 9),
    (8, 16),
    (9, 10),
    (9, 11),
    (9, 12),
    (9, 13),
    (10, 11),
    (11, 16),
    (12, 13),
    (13, 14),
    (14, 15),
    (15, 16),
];

/// The two 3-chains `1-2-3` and `4-5-6`.
pub const TRIPLET_EDGES: [(usize, usize); 4] = [(1, 2), (2, 3), (4, 5), (5, 6)];

pub fn sigma_blocks() -> Vec<Vec<Vec<f64>>> {
    vec![
        vec![
            vec![3.40, -2.75, -2.00],
            vec![-2.75, 5.50, 1.50],
            vec![-2.00, 1.50, 1.25],
        ],
        vec![vec![1.0, 0.5, 0.3], vec![0.5, 0.5, 0.3], vec![0.3, 0.3, 0.3]],
        vec![
            vec![1.40, -2.75, -2.00],
            vec![-2.75, 5.50, -1.00],
            vec![-2.00, -1.00, 3.25],
        ],
    ]
}

fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Adjacency {
    let zero: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Adjacency::from_edges(n, &zero).expect("preset edges are valid")
}

pub fn cmn_adjacency() -> Adjacency {
    from_one_based(16, &CMN_EDGES)
}

pub fn triplet_adjacency() -> Adjacency {
    from_one_based(6, &TRIPLET_EDGES)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum ExperimentSpec {
    Maps(CouplingSpec),
    Gaussians(GaussianBlockSpec),
}

impl ExperimentSpec {
    pub fn generate(&self) -> Result<SeriesMatrix> {
        match self {
            ExperimentSpec::Maps(s) => gen_coupled_map_network(s),
            ExperimentSpec::Gaussians(s) => gen_correlated_gaussians(s),
        }
    }

    pub fn with_length(mut self, length: usize) -> Self {
        match &mut self {
            ExperimentSpec::Maps(s) => s.length = length,
            ExperimentSpec::Gaussians(s) => s.length = length,
        }
        self
    }
}

/// Looks up a preset by name with the given seed.
pub fn preset(name: &str, seed: u64) -> Result<ExperimentSpec> {
    let maps = |adjacency, alpha, map| {
        ExperimentSpec::Maps(CouplingSpec {
            adjacency,
            alpha,
            map,
            transient: DEFAULT_TRANSIENT,
            length: DEFAULT_LENGTH,
            seed,
        })
    };
    let logistic = MapKind::Logistic { r: LOGISTIC_R };
    Ok(match name {
        "paper-cmn" => maps(
            cmn_adjacency(),
            CMN_ALPHA,
            MapKind::Circle {
                r: CIRCLE_R,
                k: CIRCLE_K,
            },
        ),
        "paper-isolated" => maps(Adjacency::empty(6), 0.0, logistic),
        "paper-triplets" => maps(triplet_adjacency(), TRIPLET_ALPHA, logistic),
        "paper-gaussians" => ExperimentSpec::Gaussians(GaussianBlockSpec {
            blocks: sigma_blocks(),
            length: DEFAULT_LENGTH,
            seed,
            non_psd: NonPsdPolicy::Reflect,
        }),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown preset {other:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_resolves() {
        for name in PRESET_NAMES {
            preset(name, 1).unwrap();
        }
        assert!(preset("paper-nope", 1).is_err());
    }

    #[test]
    fn preset_adjacencies_are_undirected_and_connected_as_drawn() {
        let cmn = cmn_adjacency();
        cmn.validate_undirected().unwrap();
        assert_eq!(cmn.edge_count(), CMN_EDGES.len());
        assert!(cmn.degrees().iter().all(|&k| k >= 1));
        let tri = triplet_adjacency();
        assert_eq!(tri.degrees(), vec![1, 2, 1, 1, 2, 1]);
    }
}
