//! Largest expansion rate of points in the pair space.
//!
//! Points are grouped by the grid cell they occupy at time `n`. For a cell
//! holding at least two points, `delta` is the largest pairwise distance at
//! time `n` and `Delta` the largest pairwise distance among the same points
//! `t` steps later. The cell contributes `ln(Delta / delta) / t`; the rate is
//! the mean over contributing cells.

use super::histogram::AxisBinning;
use crate::error::{Error, Result};

/// Default expansion horizon in iterations. With one step, i.i.d. data
/// spreads over the whole square at once and its decay time is close to 1.
pub const DEFAULT_HORIZON: usize = 1;

type Point = (f64, f64);

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull by the monotone chain, counter-clockwise, without collinear
/// points. Sorts `pts` in place.
fn convex_hull(pts: &mut [Point]) -> Vec<Point> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if pts.len() < 3 {
        return pts.to_vec();
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Largest Euclidean distance between any two of `pts`.
///
/// The farthest pair always lies on the convex hull, so only hull vertices
/// are compared. Points strictly inside the hull of the eight axis and
/// diagonal extremes cannot be hull vertices and are dropped first.
pub fn diameter(pts: &mut Vec<Point>) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    if pts.len() > 16 {
        discard_interior(pts);
    }
    let hull = convex_hull(pts);
    let mut best = 0.0f64;
    for (i, a) in hull.iter().enumerate() {
        for b in &hull[i + 1..] {
            let d = (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
            best = best.max(d);
        }
    }
    best.sqrt()
}

fn discard_interior(pts: &mut Vec<Point>) {
    let keys: [fn(Point) -> f64; 4] = [|p| p.0, |p| p.1, |p| p.0 + p.1, |p| p.0 - p.1];
    let mut extremes = [pts[0]; 8];
    for &p in pts.iter() {
        for (k, key) in keys.iter().enumerate() {
            if key(p) < key(extremes[2 * k]) {
                extremes[2 * k] = p;
            }
            if key(p) > key(extremes[2 * k + 1]) {
                extremes[2 * k + 1] = p;
            }
        }
    }
    let poly = convex_hull(&mut extremes);
    if poly.len() < 3 {
        return;
    }
    pts.retain(|&p| {
        let inside = (0..poly.len()).all(|i| cross(poly[i], poly[(i + 1) % poly.len()], p) > 0.0);
        !inside
    });
}

/// Rescales a series to `[0, 1]`; a constant series maps to 0.
pub(crate) fn unit_scaled(v: &[f64]) -> Vec<f64> {
    let (lo, hi) = super::histogram::min_max(v);
    let span = hi - lo;
    if span > 0.0 {
        v.iter().map(|&a| (a - lo) / span).collect()
    } else {
        vec![0.0; v.len()]
    }
}

/// Per-cell detail of an expansion-rate estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionSummary {
    pub rate: f64,
    /// Cells that entered the average.
    pub cells: usize,
}

/// Estimates the largest expansion rate `e1` (nats per iteration).
///
/// Distances are measured after rescaling both series to `[0, 1]`. Cells
/// with fewer than two points, or whose points coincide at either end of the
/// horizon, do not enter the average.
pub fn expansion_rate(x: &[f64], y: &[f64], n: usize, horizon: usize) -> Result<f64> {
    expansion_summary(x, y, n, horizon).map(|s| s.rate)
}

pub fn expansion_summary(x: &[f64], y: &[f64], n: usize, horizon: usize) -> Result<ExpansionSummary> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    expansion_summary_scaled(&unit_scaled(x), &unit_scaled(y), n, horizon)
}

/// As [`expansion_summary`] for series already rescaled to `[0, 1]`.
pub(crate) fn expansion_summary_scaled(
    xs: &[f64],
    ys: &[f64],
    n: usize,
    horizon: usize,
) -> Result<ExpansionSummary> {
    if horizon < 1 || xs.len() <= horizon {
        return Err(Error::InvalidParameter(format!(
            "horizon {horizon} needs 1 <= t < series length {}",
            xs.len()
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid size {n} < 2")));
    }
    let bx = AxisBinning::fit(xs, n);
    let by = AxisBinning::fit(ys, n);

    // counting sort of start indices by cell
    let starts = xs.len() - horizon;
    let cell_of: Vec<usize> = (0..starts).map(|t| by.index(ys[t]) * n + bx.index(xs[t])).collect();
    let mut offsets = vec![0usize; n * n + 1];
    for &c in &cell_of {
        offsets[c + 1] += 1;
    }
    for c in 0..n * n {
        offsets[c + 1] += offsets[c];
    }
    let mut order = vec![0usize; starts];
    let mut fill = offsets.clone();
    for (t, &c) in cell_of.iter().enumerate() {
        order[fill[c]] = t;
        fill[c] += 1;
    }

    let mut now: Vec<Point> = Vec::new();
    let mut later: Vec<Point> = Vec::new();
    let mut sum = 0.0;
    let mut cells = 0usize;
    for c in 0..n * n {
        let members = &order[offsets[c]..offsets[c + 1]];
        if members.len() < 2 {
            continue;
        }
        now.clear();
        later.clear();
        for &t in members {
            now.push((xs[t], ys[t]));
            later.push((xs[t + horizon], ys[t + horizon]));
        }
        let delta = diameter(&mut now);
        let big_delta = diameter(&mut later);
        if delta > 0.0 && big_delta > 0.0 {
            sum += (big_delta / delta).ln() / horizon as f64;
            cells += 1;
        }
    }
    if cells == 0 {
        return Err(Error::ExpansionUndefined);
    }
    Ok(ExpansionSummary {
        rate: sum / cells as f64,
        cells,
    })
}
