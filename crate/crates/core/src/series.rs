//! The multichannel time-series container shared by every module.

use serde::{Deserialize, Serialize};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

/// Provenance of a [`SeriesMatrix`]: generator kind and parameters, or the
/// file it was read from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SourceMeta {
    pub source: String,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Ground-truth coupling, when the data was synthesised from one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Adjacency>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SourceMeta {
    pub fn new(source: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            ..Self::default()
        }
    }
}

/// `T x M` matrix of finite samples, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix {
    columns: Vec<Vec<f64>>,
    labels: Vec<String>,
    meta: SourceMeta,
    reference: Option<[usize; 2]>,
}

/// JSON sidecar describing a series file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaFile {
    pub labels: Vec<String>,
    pub rows: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_columns: Option<[usize; 2]>,
    #[serde(flatten)]
    pub meta: SourceMeta,
}

impl SeriesMatrix {
    pub fn new(columns: Vec<Vec<f64>>, labels: Vec<String>, meta: SourceMeta) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::TooFewChannels);
        }
        if labels.len() != columns.len() {
            return Err(Error::InvalidSeries(format!(
                "{} labels for {} channels",
                labels.len(),
                columns.len()
            )));
        }
        let rows = columns[0].len();
        if rows < 2 {
            return Err(Error::TooFewRows);
        }
        for (m, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::InvalidSeries(format!(
                    "channel {m} has {} rows, expected {rows}",
                    col.len()
                )));
            }
            if let Some(t) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidSeries(format!(
                    "non-finite value at row {}, channel {}",
                    t + 1,
                    m + 1
                )));
            }
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSeries(format!("duplicate label {:?}", w[0])));
        }
        Ok(Self {
            columns,
            labels,
            meta,
            reference: None,
        })
    }

    /// Labels `c1..cM`.
    pub fn default_labels(m: usize) -> Vec<String> {
        (1..=m).map(|i| format!("c{i}")).collect()
    }

    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn channels(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, m: usize) -> &[f64] {
        &self.columns[m]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meta(&self) -> &SourceMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut SourceMeta {
        &mut self.meta
    }

    /// Column indices of an attached reference pair.
    pub fn reference_columns(&self) -> Option<[usize; 2]> {
        self.reference
    }

    pub(crate) fn set_reference_columns(&mut self, cols: [usize; 2]) {
        self.reference = Some(cols);
    }

    pub fn get(&self, t: usize, m: usize) -> f64 {
        self.columns[m][t]
    }

    pub fn into_columns(self) -> Vec<Vec<f64>> {
        self.columns
    }

    pub fn meta_file(&self) -> MetaFile {
        MetaFile {
            labels: self.labels.clone(),
            rows: self.rows(),
            reference_columns: self.reference,
            meta: self.meta.clone(),
        }
    }

    /// Restores reference-column flags recorded in a sidecar.
    pub fn with_meta_file(mut self, file: &MetaFile) -> Result<Self> {
        if file.labels.len() != self.channels() {
            return Err(Error::SizeMismatch(file.labels.len(), self.channels()));
        }
        if let Some([a, b]) = file.reference_columns {
            if a >= self.channels() || b >= self.channels() || a == b {
                return Err(Error::InvalidSeries(format!(
                    "reference columns ({a}, {b}) out of range"
                )));
            }
            self.reference = Some([a, b]);
        }
        self.meta = file.meta.clone();
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validates_shape_and_values() {
        let ok = SeriesMatrix::new(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            labels(&["a", "b"]),
            SourceMeta::new("test"),
        )
        .unwrap();
        assert_eq!((ok.rows(), ok.channels()), (2, 2));

        let one_channel =
            SeriesMatrix::new(vec![vec![1.0, 2.0]], labels(&["a"]), SourceMeta::default());
        assert!(matches!(one_channel, Err(Error::TooFewChannels)));

        let nan = SeriesMatrix::new(
            vec![vec![1.0, f64::NAN], vec![3.0, 4.0]],
            labels(&["a", "b"]),
            SourceMeta::default(),
        );
        assert!(nan.is_err());

        let dup = SeriesMatrix::new(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            labels(&["a", "a"]),
            SourceMeta::default(),
        );
        assert!(dup.is_err());
    }
}
