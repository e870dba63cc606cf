//! Threshold selection and network reconstruction from a MIR matrix.

use serde::{Deserialize, Serialize};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::estimator::MirMatrix;

/// Default minimum jump between consecutive ordered values.
pub const DEFAULT_GAP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMethod {
    /// Mid-point of the first large jump; pairs with value `>= tau` connect.
    Jump,
    /// Value of the reference pair; pairs with value `> tau` connect.
    Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairValue {
    pub pair: usize,
    pub left: usize,
    pub right: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdDecision {
    pub tau: f64,
    pub method: ThresholdMethod,
    pub jump_gap: f64,
    /// Pairs whose values fixed `tau`.
    pub evidence: Vec<PairValue>,
}

impl ThresholdDecision {
    pub fn connects(&self, value: f64) -> bool {
        match self.method {
            ThresholdMethod::Jump => value >= self.tau,
            ThresholdMethod::Reference => value > self.tau,
        }
    }
}

/// Pairs in ascending order of value; ties keep canonical pair order.
pub fn order_pairs(mir: &MirMatrix) -> Vec<PairValue> {
    let mut out: Vec<PairValue> = mir
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| PairValue {
            pair: k,
            left: i,
            right: j,
            value: mir.pair_value(k),
        })
        .collect();
    out.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.pair.cmp(&b.pair)));
    out
}

/// Places `tau` halfway across the first step larger than `gap` in the
/// ordered values.
pub fn jump_threshold(ordered: &[PairValue], gap: f64) -> Result<ThresholdDecision> {
    if ordered.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "jump threshold needs at least 2 pairs, got {}",
            ordered.len()
        )));
    }
    let k = ordered
        .windows(2)
        .position(|w| w[1].value - w[0].value > gap)
        .ok_or(Error::NoAbruptChange { gap })?;
    let (lo, hi) = (&ordered[k], &ordered[k + 1]);
    Ok(ThresholdDecision {
        tau: 0.5 * (lo.value + hi.value),
        method: ThresholdMethod::Jump,
        jump_gap: gap,
        evidence: vec![lo.clone(), hi.clone()],
    })
}

/// Uses the reference pair's own value as the threshold.
pub fn reference_threshold(mir: &MirMatrix) -> Result<ThresholdDecision> {
    let k = mir.reference_pair().ok_or(Error::MissingReferencePair)?;
    let (i, j) = mir.pairs()[k];
    let value = mir.pair_value(k);
    Ok(ThresholdDecision {
        tau: value,
        method: ThresholdMethod::Reference,
        jump_gap: DEFAULT_GAP,
        evidence: vec![PairValue {
            pair: k,
            left: i,
            right: j,
            value,
        }],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferredNetwork {
    /// Adjacency over the data channels only (reference channels removed).
    pub adjacency: Adjacency,
    /// Labels of the rows of `adjacency`.
    pub labels: Vec<String>,
    pub threshold: ThresholdDecision,
    pub mir: MirMatrix,
    /// Indices (in the MIR matrix) of channels left out of the graph.
    pub excluded_channels: Vec<usize>,
}

impl InferredNetwork {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency.edges()
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            labels: self.labels.clone(),
            adjacency: self.adjacency.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.labels[u].clone(), self.labels[v].clone()])
                .collect(),
            tau: self.threshold.tau,
            method: self.threshold.method,
            jump_gap: self.threshold.jump_gap,
            evidence: self
                .threshold
                .evidence
                .iter()
                .map(|p| EvidenceEntry {
                    pair: self.mir.pair_label(p.pair),
                    value: p.value,
                })
                .collect(),
            excluded_channels: self
                .excluded_channels
                .iter()
                .map(|&m| self.mir.labels()[m].clone())
                .collect(),
        }
    }

    /// One `u,v` line per edge, using labels.
    pub fn edge_list_text(&self) -> String {
        self.edges()
            .into_iter()
            .map(|(u, v)| format!("{},{}\n", self.labels[u], self.labels[v]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceEntry {
    pub pair: String,
    pub value: f64,
}

/// JSON layout of an inferred network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub labels: Vec<String>,
    pub adjacency: Adjacency,
    pub edges: Vec<[String; 2]>,
    pub tau: f64,
    pub method: ThresholdMethod,
    pub jump_gap: f64,
    pub evidence: Vec<EvidenceEntry>,
    #[serde(default)]
    pub excluded_channels: Vec<String>,
}

/// Connects every non-reference pair that passes the threshold.
pub fn reconstruct_adjacency(mir: &MirMatrix, threshold: &ThresholdDecision) -> InferredNetwork {
    let keep: Vec<usize> = (0..mir.size()).filter(|&m| !mir.is_reference_channel(m)).collect();
    let excluded = (0..mir.size()).filter(|&m| mir.is_reference_channel(m)).collect();
    let mut adjacency = Adjacency::empty(keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a + 1) {
            if threshold.connects(mir.value(i, j)) {
                adjacency.set_undirected(a, b, true);
            }
        }
    }
    InferredNetwork {
        adjacency,
        labels: keep.iter().map(|&m| mir.labels()[m].clone()).collect(),
        threshold: threshold.clone(),
        mir: mir.clone(),
        excluded_channels: excluded,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    /// Correctly classified unordered pairs, as a percentage.
    pub percentage: f64,
    pub correct: usize,
    pub total: usize,
    /// Edges of the truth that were not inferred (0-based).
    pub missed: Vec<(usize, usize)>,
    /// Inferred edges absent from the truth (0-based).
    pub spurious: Vec<(usize, usize)>,
}

impl AccuracyReport {
    pub fn is_exact(&self) -> bool {
        self.missed.is_empty() && self.spurious.is_empty()
    }
}

pub fn inference_accuracy(truth: &Adjacency, inferred: &Adjacency) -> Result<AccuracyReport> {
    if truth.len() != inferred.len() {
        return Err(Error::SizeMismatch(truth.len(), inferred.len()));
    }
    truth.validate_undirected()?;
    inferred.validate_undirected()?;
    let n = truth.len();
    let mut missed = Vec::new();
    let mut spurious = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match (truth.get(i, j), inferred.get(i, j)) {
                (true, false) => missed.push((i, j)),
                (false, true) => spurious.push((i, j)),
                _ => {}
            }
        }
    }
    let total = n * n.saturating_sub(1) / 2;
    let correct = total - missed.len() - spurious.len();
    let percentage = if total == 0 {
        100.0
    } else {
        100.0 * correct as f64 / total as f64
    };
    Ok(AccuracyReport {
        percentage,
        correct,
        total,
        missed,
        spurious,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(m: usize) -> Vec<String> {
        (1..=m).map(|i| format!("n{i}")).collect()
    }

    fn ordered(values: &[f64]) -> Vec<PairValue> {
        values
            .iter()
            .enumerate()
            .map(|(k, &v)| PairValue {
                pair: k,
                left: 0,
                right: 1,
                value: v,
            })
            .collect()
    }

    #[test]
    fn ordering_and_ties() {
        // pairs: AB, AC, BC
        let m = MirMatrix::from_pair_values(labels(3), &[0.3, 0.1, 0.2], None).unwrap();
        let o: Vec<usize> = order_pairs(&m).iter().map(|p| p.pair).collect();
        assert_eq!(o, vec![1, 2, 0]);
        let m = MirMatrix::from_pair_values(labels(3), &[0.5, 0.5, 0.5], None).unwrap();
        let o: Vec<usize> = order_pairs(&m).iter().map(|p| p.pair).collect();
        assert_eq!(o, vec![0, 1, 2]);
    }

    #[test]
    fn jump_rule() {
        let d = jump_threshold(&ordered(&[0.01, 0.02, 0.03, 0.50, 0.60]), 0.1).unwrap();
        assert!((d.tau - 0.265).abs() < 1e-15);
        assert_eq!(d.evidence.len(), 2);
        let e = jump_threshold(&ordered(&[0.1, 0.15, 0.19]), 0.1).unwrap_err();
        assert!(e.to_string().contains("no abrupt change"));
    }

    #[test]
    fn reference_rule_is_strict() {
        // 4 channels, reference = channels 2,3 (pair index 5)
        let m = MirMatrix::from_pair_values(labels(4), &[1.0, 0.2, 0.2, 0.2, 0.2, 0.4], Some([2, 3]))
            .unwrap();
        let d = reference_threshold(&m).unwrap();
        assert_eq!(d.tau, 0.4);
        assert!(!d.connects(0.4) && d.connects(0.4000001));
        let net = reconstruct_adjacency(&m, &d);
        assert_eq!(net.labels, vec!["n1", "n2"]);
        assert_eq!(net.edges(), vec![(0, 1)]);
        assert_eq!(net.excluded_channels, vec![2, 3]);

        let top = MirMatrix::from_pair_values(labels(4), &[0.9, 0.2, 0.2, 0.2, 0.2, 1.0], Some([2, 3]))
            .unwrap();
        let net = reconstruct_adjacency(&top, &reference_threshold(&top).unwrap());
        assert_eq!(net.adjacency.edge_count(), 0);

        let none = MirMatrix::from_pair_values(labels(3), &[0.3, 0.1, 0.2], None).unwrap();
        assert!(matches!(reference_threshold(&none), Err(Error::MissingReferencePair)));
    }

    #[test]
    fn floor_and_ceiling_thresholds() {
        let m = MirMatrix::from_pair_values(labels(4), &[0.0, 0.3, 1.0, 0.5, 0.2, 0.7], None).unwrap();
        let mut d = ThresholdDecision {
            tau: 0.0,
            method: ThresholdMethod::Jump,
            jump_gap: DEFAULT_GAP,
            evidence: vec![],
        };
        assert_eq!(reconstruct_adjacency(&m, &d).adjacency, Adjacency::complete(4));
        d.tau = 1.0 + 1e-12;
        assert_eq!(reconstruct_adjacency(&m, &d).adjacency.edge_count(), 0);
    }

    #[test]
    fn accuracy_counting() {
        let a = Adjacency::from_edges(6, &[(0, 1), (1, 2)]).unwrap();
        let r = inference_accuracy(&a, &a).unwrap();
        assert_eq!(r.percentage, 100.0);
        assert!(r.is_exact());

        let empty = Adjacency::empty(6);
        let one = Adjacency::from_edges(6, &[(2, 4)]).unwrap();
        let r = inference_accuracy(&empty, &one).unwrap();
        assert_eq!((r.correct, r.total), (14, 15));
        assert!((r.percentage - 93.333).abs() < 1e-3);
        assert_eq!(r.spurious, vec![(2, 4)]);

        assert!(inference_accuracy(&empty, &Adjacency::empty(5)).is_err());
    }
}
