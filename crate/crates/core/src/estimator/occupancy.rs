//! Largest grid size supported by the data.

use super::histogram::build_joint_histogram;
use crate::error::{Error, Result};

/// Occupancy of the `n x n` grid: `(points, occupied cells)`.
pub fn occupancy(x: &[f64], y: &[f64], n: usize) -> Result<(usize, usize)> {
    let h = build_joint_histogram(x, y, n)?;
    Ok((x.len(), h.occupied_cells()))
}

/// `<N0> >= N_oc`: the mean count of occupied cells is at least the number
/// of occupied cells. With integer counts this is `T >= N_oc^2`.
pub fn occupancy_condition(points: usize, occupied: usize) -> bool {
    // T / N_oc >= N_oc, evaluated without division
    (points as u128) >= (occupied as u128) * (occupied as u128)
}

/// Scans `N = 2, 3, ...` and returns the last grid size before the occupancy
/// condition first fails, never exceeding `cap` or the series length.
pub fn max_grid_size(x: &[f64], y: &[f64], cap: Option<usize>) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(x.len(), y.len()));
    }
    let limit = cap.unwrap_or(usize::MAX).min(x.len());
    if limit < 2 {
        return Err(Error::InsufficientData);
    }
    let mut best = None;
    for n in 2..=limit {
        let (points, occupied) = occupancy(x, y, n)?;
        if !occupancy_condition(points, occupied) {
            break;
        }
        best = Some(n);
    }
    best.ok_or(Error::InsufficientData)
}
