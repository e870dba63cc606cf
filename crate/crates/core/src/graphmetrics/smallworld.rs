use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::structure::{average_clustering, average_path_length, largest_component};
use super::Measure;
use crate::adjacency::Adjacency;
use crate::error::Result;

/// Default number of randomised graphs behind `C_rand` and `L_rand`.
pub const DEFAULT_ENSEMBLE_SIZE: usize = 20;

/// Successful swaps per edge attempted for each randomised graph.
const SWAPS_PER_EDGE: usize = 10;
/// Attempt budget per requested swap, so rigid graphs terminate.
const TRIES_PER_SWAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub size: usize,
    pub seed: u64,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self {
            size: DEFAULT_ENSEMBLE_SIZE,
            seed: 0,
        }
    }
}

/// Randomises `adj` by double edge swaps `(a,b),(c,d) -> (a,d),(c,b)`,
/// rejecting swaps that would create self-loops or multi-edges. Every
/// node keeps its degree.
pub fn rewire_degree_preserving<R: Rng>(adj: &Adjacency, rng: &mut R) -> Adjacency {
    let mut out = adj.clone();
    let mut edges = adj.edges();
    let m = edges.len();
    if m < 2 {
        return out;
    }
    let target = SWAPS_PER_EDGE * m;
    let mut done = 0;
    for _ in 0..target * TRIES_PER_SWAP {
        if done == target {
            break;
        }
        let e1 = rng.random_range(0..m);
        let e2 = rng.random_range(0..m);
        if e1 == e2 {
            continue;
        }
        let (a, b) = edges[e1];
        let (mut c, mut d) = edges[e2];
        if rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || out.get(a, d) || out.get(c, b) {
            continue;
        }
        out.set_undirected(a, b, false);
        out.set_undirected(c, d, false);
        out.set_undirected(a, d, true);
        out.set_undirected(c, b, true);
        edges[e1] = (a, d);
        edges[e2] = (c, b);
        done += 1;
    }
    out
}

/// Degree-preserving randomisations of `adj`. Sample `k` uses its own
/// ChaCha stream of the master seed, so results do not depend on scheduling.
pub fn rewired_ensemble(adj: &Adjacency, spec: &EnsembleSpec) -> Vec<Adjacency> {
    (0..spec.size)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(k as u64);
            rewire_degree_preserving(adj, &mut rng)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallWorld {
    pub sigma: Measure,
    pub clustering: f64,
    pub path_length: f64,
    pub clustering_rand: Option<f64>,
    pub path_length_rand: Option<f64>,
    pub ensemble: EnsembleSpec,
}

/// `sigma = (C / C_rand) / (L / L_rand)` against a degree-preserving random
/// ensemble. Graphs too small or too sparse for the ratio to mean anything
/// report sigma as undefined with the reason.
pub fn small_world_sigma(adj: &Adjacency, spec: &EnsembleSpec) -> Result<SmallWorld> {
    adj.validate_undirected()?;
    let clustering = average_clustering(adj);
    let path_length = average_path_length(adj);
    let mut out = SmallWorld {
        sigma: Measure::undefined(""),
        clustering,
        path_length,
        clustering_rand: None,
        path_length_rand: None,
        ensemble: *spec,
    };
    let comp = largest_component(adj);
    let comp_edges = adj
        .edges()
        .iter()
        .filter(|(u, _)| comp.binary_search(u).is_ok())
        .count();
    if comp.len() < 4 || comp_edges < 3 {
        out.sigma = Measure::undefined(format!(
            "largest component has {} nodes and {} edges; need at least 4 and 3",
            comp.len(),
            comp_edges
        ));
        return Ok(out);
    }
    if spec.size == 0 {
        out.sigma = Measure::undefined("empty random ensemble");
        return Ok(out);
    }
    let samples = rewired_ensemble(adj, spec);
    let degrees = adj.degrees();
    for g in &samples {
        assert_eq!(g.degrees(), degrees, "rewiring changed the degree sequence");
    }
    let k = samples.len() as f64;
    let c_rand = samples.iter().map(average_clustering).sum::<f64>() / k;
    let l_rand = samples.iter().map(average_path_length).sum::<f64>() / k;
    out.clustering_rand = Some(c_rand);
    out.path_length_rand = Some(l_rand);
    out.sigma = if c_rand == 0.0 {
        Measure::undefined("random ensemble has zero clustering")
    } else if path_length == 0.0 || l_rand == 0.0 {
        Measure::undefined("zero mean path length")
    } else {
        Measure::defined((clustering / c_rand) / (path_length / l_rand))
    };
    Ok(out)
}
