//! Equal-width joint histograms and the entropies derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maps values of one series onto `n` equal-width bins spanning its
/// observed `[min, max]`. The upper edge is closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisBinning {
    pub min: f64,
    pub max: f64,
    n: usize,
    scale: f64,
}

impl AxisBinning {
    pub fn fit(values: &[f64], n: usize) -> Self {
        let (min, max) = min_max(values);
        let scale = if max > min { n as f64 / (max - min) } else { 0.0 };
        Self { min, max, n, scale }
    }

    pub fn is_degenerate(&self) -> bool {
        self.max <= self.min
    }

    #[inline]
    pub fn index(&self, v: f64) -> usize {
        let i = ((v - self.min) * self.scale) as usize;
        i.min(self.n - 1)
    }
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// `N x N` occupancy counts of the points `(x_t, y_t)`.
///
/// Stored row-major with rows indexed by the Y bin and columns by the X bin,
/// so column sums are X-marginal counts and row sums are Y-marginal counts.
#[derive(Debug, Clone, PartialEq)]
pub struct JointHistogram {
    pub grid_size: usize,
    counts: Vec<u64>,
    pub total: u64,
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
    pub degenerate_x: bool,
    pub degenerate_y: bool,
}

impl JointHistogram {
    /// Builds a histogram directly from counts (`counts[row][col]`, row = Y
    /// bin). Used for synthetic tables.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let n = counts.len();
        if n < 1 || counts.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("counts must be a square table".into()));
        }
        let flat: Vec<u64> = counts.into_iter().flatten().collect();
        let total = flat.iter().sum();
        if total == 0 {
            return Err(Error::InvalidParameter("histogram holds no samples".into()));
        }
        Ok(Self {
            grid_size: n,
            counts: flat,
            total,
            x_range: [0.0, 1.0],
            y_range: [0.0, 1.0],
            degenerate_x: false,
            degenerate_y: false,
        })
    }

    #[inline]
    pub fn count(&self, x_bin: usize, y_bin: usize) -> u64 {
        self.counts[y_bin * self.grid_size + x_bin]
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_x || self.degenerate_y
    }

    pub fn occupied_cells(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Counts per X bin (column sums).
    pub fn x_marginal(&self) -> Vec<u64> {
        let n = self.grid_size;
        (0..n).map(|i| (0..n).map(|j| self.count(i, j)).sum()).collect()
    }

    /// Counts per Y bin (row sums).
    pub fn y_marginal(&self) -> Vec<u64> {
        let n = self.grid_size;
        (0..n).map(|j| (0..n).map(|i| self.count(i, j)).sum()).collect()
    }

    /// The same table with the roles of X and Y exchanged.
    pub fn transposed(&self) -> Self {
        let n = self.grid_size;
        let mut counts = vec![0; n * n];
        for j in 0..n {
            for i in 0..n {
                counts[i * n + j] = self.count(i, j);
            }
        }
        Self {
            grid_size: n,
            counts,
            total: self.total,
            x_range: self.y_range,
            y_range: self.x_range,
            degenerate_x: self.degenerate_y,
            degenerate_y: self.degenerate_x,
        }
    }

    pub fn cells(&self) -> &[u64] {
        &self.counts
    }
}

/// Bins the pairs `(x_t, y_t)` on an `n x n` grid over each series' range.
///
/// A constant series is allowed; every sample then lands in bin 0 of that
/// axis and the corresponding `degenerate_*` flag is set.
pub fn build_joint_histogram(x: &[f64], y: &[f64], n: usize) -> Result<JointHistogram> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid size {n} < 2")));
    }
    if x.len() < n {
        return Err(Error::InvalidParameter(format!(
            "grid size {n} exceeds series length {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidSeries("non-finite sample".into()));
    }
    let bx = AxisBinning::fit(x, n);
    let by = AxisBinning::fit(y, n);
    let mut counts = vec![0u64; n * n];
    for (&a, &b) in x.iter().zip(y) {
        counts[by.index(b) * n + bx.index(a)] += 1;
    }
    Ok(JointHistogram {
        grid_size: n,
        counts,
        total: x.len() as u64,
        x_range: [bx.min, bx.max],
        y_range: [by.min, by.max],
        degenerate_x: bx.is_degenerate(),
        degenerate_y: by.is_degenerate(),
    })
}

/// `-sum p ln p` over non-empty bins, in nats.
pub fn entropy_of_counts(counts: &[u64], total: u64) -> f64 {
    let t = total as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / t;
            p * p.ln()
        })
        .sum::<f64>()
}

pub fn marginal_entropy(hist: &JointHistogram, axis: Axis) -> f64 {
    let m = match axis {
        Axis::X => hist.x_marginal(),
        Axis::Y => hist.y_marginal(),
    };
    entropy_of_counts(&m, hist.total)
}

pub fn joint_entropy(hist: &JointHistogram) -> f64 {
    entropy_of_counts(&hist.counts, hist.total)
}

/// `I = H_X + H_Y - H_XY` in nats.
pub fn mutual_information(hist: &JointHistogram) -> f64 {
    marginal_entropy(hist, Axis::X) + marginal_entropy(hist, Axis::Y) - joint_entropy(hist)
}

/// `I = sum p_xy ln(p_xy / (p_x p_y))`, summed cell by cell. Independent of
/// [`mutual_information`]; the two must agree to rounding.
pub fn mutual_information_direct(hist: &JointHistogram) -> f64 {
    let n = hist.grid_size;
    let t = hist.total as f64;
    let px = hist.x_marginal();
    let py = hist.y_marginal();
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            let c = hist.count(i, j);
            if c == 0 {
                continue;
            }
            let pxy = c as f64 / t;
            let denom = (px[i] as f64 / t) * (py[j] as f64 / t);
            sum += pxy * (pxy / denom).ln();
        }
    }
    sum
}
