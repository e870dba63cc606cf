//! Networks of coupled one-dimensional maps,
//!
//! `x_{n+1}^i = (1 - a) f(x_n^i) + (a / k_i) sum_j A_ij f(x_n^j)`,
//!
//! iterated synchronously. A node with `k_i = 0` evolves as the bare map.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::seeded_rng;
use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::series::{SeriesMatrix, SourceMeta};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapKind {
    /// `f(x) = x + r - K/(2 pi) sin(2 pi x) mod 1`
    Circle { r: f64, k: f64 },
    /// `f(x) = r x (1 - x)`
    Logistic { r: f64 },
}

impl MapKind {
    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            MapKind::Circle { r, k } => wrap_unit(x + r - k / TAU * (TAU * x).sin()),
            MapKind::Logistic { r } => r * x * (1.0 - x),
        }
    }

    fn in_range(&self, x: f64) -> bool {
        match self {
            MapKind::Circle { .. } => (0.0..1.0).contains(&x),
            MapKind::Logistic { .. } => (0.0..=1.0).contains(&x),
        }
    }

    fn label_prefix(&self) -> &'static str {
        match self {
            MapKind::Circle { .. } => "circle",
            MapKind::Logistic { .. } => "logistic",
        }
    }
}

/// `x mod 1` in `[0, 1)`; `rem_euclid` can round up to exactly 1.0.
#[inline]
fn wrap_unit(x: f64) -> f64 {
    let y = x.rem_euclid(1.0);
    if y >= 1.0 {
        0.0
    } else {
        y
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingSpec {
    pub adjacency: Adjacency,
    pub alpha: f64,
    pub map: MapKind,
    pub transient: usize,
    pub length: usize,
    pub seed: u64,
}

impl CouplingSpec {
    fn validate(&self) -> Result<()> {
        let m = self.adjacency.len();
        if m < 2 {
            return Err(Error::TooFewChannels);
        }
        if self.length < 2 {
            return Err(Error::TooFewRows);
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter(format!(
                "coupling strength {} outside [0, 1]",
                self.alpha
            )));
        }
        if let Some(i) = (0..m).find(|&i| self.adjacency.get(i, i)) {
            return Err(Error::SelfLoop(i));
        }
        Ok(())
    }
}

/// Iterates the coupled map network described by `spec`.
///
/// Initial states are uniform in `[0, 1)`. The first `transient` iterates are
/// discarded and the next `length` are returned as channels `x1..xM`.
pub fn gen_coupled_map_network(spec: &CouplingSpec) -> Result<SeriesMatrix> {
    let s = simulate(spec)?;
    for w in &s.meta().warnings {
        log::warn!("{w}");
    }
    Ok(s)
}

/// [`gen_coupled_map_network`] without logging; warnings stay in the metadata.
pub(crate) fn simulate(spec: &CouplingSpec) -> Result<SeriesMatrix> {
    spec.validate()?;
    let m = spec.adjacency.len();
    let neighbors: Vec<Vec<usize>> = (0..m).map(|i| spec.adjacency.neighbors(i).collect()).collect();

    let mut warnings = Vec::new();
    if spec.alpha > 0.0 {
        for (i, nb) in neighbors.iter().enumerate() {
            if nb.is_empty() {
                warnings.push(format!("node {} has no inputs; it evolves as the uncoupled map", i + 1));
            }
        }
    }

    let mut rng = seeded_rng(spec.seed);
    let mut state: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
    let mut image = vec![0.0; m];
    let mut columns: Vec<Vec<f64>> = (0..m).map(|_| Vec::with_capacity(spec.length)).collect();

    let total = spec.transient + spec.length;
    for n in 0..total {
        for (fx, &x) in image.iter_mut().zip(&state) {
            *fx = spec.map.apply(x);
        }
        for i in 0..m {
            let nb = &neighbors[i];
            let next = if nb.is_empty() || spec.alpha == 0.0 {
                image[i]
            } else {
                let mean = nb.iter().map(|&j| image[j]).sum::<f64>() / nb.len() as f64;
                (1.0 - spec.alpha) * image[i] + spec.alpha * mean
            };
            let next = match spec.map {
                MapKind::Circle { .. } => wrap_unit(next),
                MapKind::Logistic { .. } => next,
            };
            if !next.is_finite() || !spec.map.in_range(next) {
                return Err(Error::Divergent {
                    node: i + 1,
                    iteration: n + 1,
                    value: next,
                });
            }
            state[i] = next;
        }
        if n >= spec.transient {
            for (col, &x) in columns.iter_mut().zip(&state) {
                col.push(x);
            }
        }
    }

    let labels = (1..=m).map(|i| format!("x{i}")).collect();
    let meta = SourceMeta {
        source: format!("{}-map-network", spec.map.label_prefix()),
        params: serde_json::to_value(spec)?,
        seed: Some(spec.seed),
        adjacency: Some(spec.adjacency.clone()),
        warnings,
    };
    SeriesMatrix::new(columns, labels, meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(adjacency: Adjacency, alpha: f64, map: MapKind, length: usize, seed: u64) -> CouplingSpec {
        CouplingSpec {
            adjacency,
            alpha,
            map,
            transient: 100,
            length,
            seed,
        }
    }

    #[test]
    fn circle_map_stays_in_unit_interval() {
        let ring: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let a = Adjacency::from_edges(8, &ring).unwrap();
        let s = gen_coupled_map_network(&spec(
            a,
            0.03,
            MapKind::Circle { r: 0.35, k: 6.9115 },
            5000,
            3,
        ))
        .unwrap();
        assert_eq!((s.rows(), s.channels()), (5000, 8));
        assert!(s.columns().iter().flatten().all(|&v| (0.0..1.0).contains(&v)));
    }

    #[test]
    fn uncoupled_nodes_follow_the_bare_map() {
        let s = gen_coupled_map_network(&spec(
            Adjacency::complete(3),
            0.0,
            MapKind::Logistic { r: 4.0 },
            50,
            11,
        ))
        .unwrap();
        for m in 0..3 {
            let col = s.column(m);
            for w in col.windows(2) {
                assert_eq!(w[1], 4.0 * w[0] * (1.0 - w[0]));
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let mk = |seed| {
            gen_coupled_map_network(&spec(
                Adjacency::empty(4),
                0.0,
                MapKind::Logistic { r: 4.0 },
                10,
                seed,
            ))
            .unwrap()
        };
        assert_eq!(mk(5), mk(5));
        assert_ne!(mk(5), mk(6));
    }

    #[test]
    fn isolated_node_with_coupling_warns() {
        let a = Adjacency::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        let s = gen_coupled_map_network(&spec(a, 0.1, MapKind::Logistic { r: 4.0 }, 20, 1)).unwrap();
        assert_eq!(s.meta().warnings.len(), 1);
        let x2 = s.column(1);
        for w in x2.windows(2) {
            assert_eq!(w[1], 4.0 * w[0] * (1.0 - w[0]));
        }
    }

    #[test]
    fn divergent_parameters_are_rejected() {
        let err = gen_coupled_map_network(&spec(
            Adjacency::empty(2),
            0.0,
            MapKind::Logistic { r: 4.5 },
            1000,
            1,
        ));
        assert!(matches!(err, Err(Error::Divergent { .. })));
    }
}
