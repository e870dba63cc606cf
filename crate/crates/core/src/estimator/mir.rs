use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expansion::{expansion_summary_scaled, unit_scaled, DEFAULT_HORIZON};
use super::histogram::{build_joint_histogram, mutual_information};
use super::occupancy::max_grid_size;
use crate::error::{Error, Result};
use crate::series::SeriesMatrix;

/// `T(N) = ln(N) / e1`: iterations for a one-cell uncertainty to spread over
/// the whole axis.
pub fn correlation_decay_time(e1: f64, n: usize) -> Result<f64> {
    if !(e1 > 0.0) || !e1.is_finite() {
        return Err(Error::NonPositiveRate(e1));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid size {n} < 2")));
    }
    Ok((n as f64).ln() / e1)
}

/// One grid size of one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub grid_size: usize,
    pub mi: f64,
    pub e1: f64,
    pub decay_time: f64,
    pub mir: f64,
    pub mir_hat: f64,
}

impl GridRecord {
    /// `xs`, `ys` are `x`, `y` rescaled to `[0, 1]`.
    fn compute(x: &[f64], y: &[f64], xs: &[f64], ys: &[f64], n: usize, horizon: usize) -> Result<Self> {
        let mi = mutual_information(&build_joint_histogram(x, y, n)?);
        let e1 = expansion_summary_scaled(xs, ys, n, horizon)?.rate;
        let decay_time = correlation_decay_time(e1, n)?;
        Ok(Self {
            grid_size: n,
            mi,
            e1,
            decay_time,
            mir: mi / decay_time,
            mir_hat: 0.0,
        })
    }
}

/// `MIR = I(N) / T(N)` for one pair at one grid size.
pub fn pair_mir(x: &[f64], y: &[f64], n: usize, horizon: usize) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    GridRecord::compute(x, y, &unit_scaled(x), &unit_scaled(y), n, horizon).map(|r| r.mir)
}

/// Min-max normalisation over all pairs at a fixed grid size.
///
/// Returns the normalised values and whether the input was degenerate
/// (all values equal, in which case every output is 0).
pub fn mir_hat_per_grid(values: &[f64]) -> (Vec<f64>, bool) {
    let (lo, hi) = super::histogram::min_max(values);
    if !(hi > lo) {
        return (vec![0.0; values.len()], true);
    }
    let span = hi - lo;
    (values.iter().map(|&v| (v - lo) / span).collect(), false)
}

/// Sums each pair's normalised values over grid sizes and divides by the
/// largest sum. `per_grid[g][p]` is pair `p` at grid size `g`.
///
/// Returns the values and whether every sum was zero.
pub fn mir_bar(per_grid: &[Vec<f64>]) -> (Vec<f64>, bool) {
    let pairs = per_grid.first().map_or(0, Vec::len);
    let sums: Vec<f64> = (0..pairs)
        .map(|p| per_grid.iter().map(|g| g[p]).sum())
        .collect();
    let max = sums.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        (sums.iter().map(|&s| s / max).collect(), false)
    } else {
        (vec![0.0; pairs], true)
    }
}

/// Integer grid sizes from `ceil(0.2 N_max)` (at least 2) to `N_max`.
pub fn grid_range(n_max: usize) -> Vec<usize> {
    let lo = ((0.2 * n_max as f64).ceil() as usize).max(2);
    (lo..=n_max.max(2)).collect()
}

/// Symmetric pair matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MirMatrix {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
    pairs: Vec<(usize, usize)>,
    reference_channels: Option<[usize; 2]>,
}

impl MirMatrix {
    /// Builds the matrix from per-pair values in canonical order
    /// (`(0,1), (0,2), ..., (M-2, M-1)`).
    pub fn from_pair_values(
        labels: Vec<String>,
        pair_values: &[f64],
        reference_channels: Option<[usize; 2]>,
    ) -> Result<Self> {
        let m = labels.len();
        let pairs = canonical_pairs(m);
        if pairs.len() != pair_values.len() {
            return Err(Error::SizeMismatch(pairs.len(), pair_values.len()));
        }
        let mut values = vec![vec![0.0; m]; m];
        for (&(i, j), &v) in pairs.iter().zip(pair_values) {
            values[i][j] = v;
            values[j][i] = v;
        }
        Ok(Self {
            labels,
            values,
            pairs,
            reference_channels,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_value(&self, k: usize) -> f64 {
        let (i, j) = self.pairs[k];
        self.values[i][j]
    }

    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pairs.iter().position(|&p| p == (a, b))
    }

    pub fn reference_channels(&self) -> Option<[usize; 2]> {
        self.reference_channels
    }

    /// Canonical index of the pair formed by the two reference channels.
    pub fn reference_pair(&self) -> Option<usize> {
        self.reference_channels.and_then(|[a, b]| self.pair_index(a, b))
    }

    pub fn is_reference_channel(&self, m: usize) -> bool {
        self.reference_channels.is_some_and(|r| r.contains(&m))
    }

    pub fn pair_label(&self, k: usize) -> String {
        let (i, j) = self.pairs[k];
        format!("{}:{}", self.labels[i], self.labels[j])
    }
}

pub(crate) fn canonical_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect()
}

/// Everything computed for one channel pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTable {
    pub left: usize,
    pub right: usize,
    /// Largest grid size this pair alone would support.
    pub n_max: usize,
    pub grids: Vec<GridRecord>,
    pub mir_bar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MirEstimator {
    pub horizon: usize,
    pub grid_cap: Option<usize>,
}

impl Default for MirEstimator {
    fn default() -> Self {
        Self {
            horizon: DEFAULT_HORIZON,
            grid_cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirAnalysis {
    pub matrix: MirMatrix,
    pub grid_sizes: Vec<usize>,
    /// Common `N_max`: the smallest per-pair value, so the occupancy
    /// condition holds for every pair on every grid used.
    pub n_max: usize,
    pub horizon: usize,
    pub tables: Vec<PairTable>,
    pub warnings: Vec<String>,
}

impl MirEstimator {
    pub fn estimate(&self, data: &SeriesMatrix) -> Result<MirAnalysis> {
        let m = data.channels();
        let pairs = canonical_pairs(m);
        let labels = data.labels();
        let tag = |(i, j): (usize, usize), e: Error| Error::Pair {
            left: labels[i].clone(),
            right: labels[j].clone(),
            source: Box::new(e),
        };

        let pair_n_max: Vec<usize> = pairs
            .par_iter()
            .map(|&(i, j)| {
                max_grid_size(data.column(i), data.column(j), self.grid_cap).map_err(|e| tag((i, j), e))
            })
            .collect::<Result<_>>()?;
        let n_max = *pair_n_max.iter().min().ok_or(Error::TooFewChannels)?;
        let grid_sizes = grid_range(n_max);

        let scaled: Vec<Vec<f64>> = data.columns().par_iter().map(|c| unit_scaled(c)).collect();
        let mut records: Vec<Vec<GridRecord>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (data.column(i), data.column(j));
                let (xs, ys) = (&scaled[i], &scaled[j]);
                grid_sizes
                    .iter()
                    .map(|&n| GridRecord::compute(x, y, xs, ys, n, self.horizon))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| tag((i, j), e))
            })
            .collect::<Result<_>>()?;

        let mut warnings = Vec::new();
        let mut hats = Vec::with_capacity(grid_sizes.len());
        for (g, &n) in grid_sizes.iter().enumerate() {
            let values: Vec<f64> = records.iter().map(|r| r[g].mir).collect();
            let (hat, degenerate) = mir_hat_per_grid(&values);
            if degenerate {
                let msg = format!("all pairs share the same MIR at N = {n}; normalised to 0");
                log::warn!("{msg}");
                warnings.push(msg);
            }
            for (r, &h) in records.iter_mut().zip(&hat) {
                r[g].mir_hat = h;
            }
            hats.push(hat);
        }
        let (bar, all_zero) = mir_bar(&hats);
        if all_zero {
            let msg = "every pair sum is zero; MIR matrix is all zeros".to_string();
            log::warn!("{msg}");
            warnings.push(msg);
        }

        let tables = pairs
            .iter()
            .zip(records)
            .zip(&pair_n_max)
            .zip(&bar)
            .map(|((((i, j), grids), &n), &b)| PairTable {
                left: *i,
                right: *j,
                n_max: n,
                grids,
                mir_bar: b,
            })
            .collect();
        let matrix = MirMatrix::from_pair_values(labels.to_vec(), &bar, data.reference_columns())?;
        Ok(MirAnalysis {
            matrix,
            grid_sizes,
            n_max,
            horizon: self.horizon,
            tables,
            warnings,
        })
    }
}

/// JSON layout of an analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirFile {
    pub labels: Vec<String>,
    pub grid_sizes: Vec<usize>,
    pub n_max: usize,
    pub horizon: usize,
    pub mir_bar: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_channels: Option<[usize; 2]>,
    pub per_pair: BTreeMap<String, PairTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl MirAnalysis {
    pub fn to_file(&self) -> MirFile {
        MirFile {
            labels: self.matrix.labels().to_vec(),
            grid_sizes: self.grid_sizes.clone(),
            n_max: self.n_max,
            horizon: self.horizon,
            mir_bar: self.matrix.rows().to_vec(),
            reference_channels: self.matrix.reference_channels(),
            per_pair: self
                .tables
                .iter()
                .enumerate()
                .map(|(k, t)| (self.matrix.pair_label(k), t.clone()))
                .collect(),
            warnings: self.warnings.clone(),
        }
    }
}

impl MirFile {
    pub fn matrix(&self) -> Result<MirMatrix> {
        let m = self.labels.len();
        let values: Vec<f64> = canonical_pairs(m)
            .into_iter()
            .map(|(i, j)| self.mir_bar.get(i).and_then(|r| r.get(j)).copied())
            .collect::<Option<_>>()
            .ok_or(Error::SizeMismatch(m, self.mir_bar.len()))?;
        MirMatrix::from_pair_values(self.labels.clone(), &values, self.reference_channels)
    }
}
