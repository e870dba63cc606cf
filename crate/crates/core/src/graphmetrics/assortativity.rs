use super::Measure;
use crate::adjacency::Adjacency;
use crate::error::Result;

/// Degree assortativity: Pearson correlation of the degrees at the two ends
/// of each edge, every edge taken in both orientations.
pub fn assortativity(adj: &Adjacency) -> Result<Measure> {
    adj.validate_undirected()?;
    let edges = adj.edges();
    if edges.is_empty() {
        return Ok(Measure::undefined("graph has no edges"));
    }
    let deg = adj.degrees();
    // Both orientations make the two endpoint samples identically
    // distributed, so one mean and one variance serve both.
    let n = 2.0 * edges.len() as f64;
    let mean = edges.iter().map(|&(u, v)| (deg[u] + deg[v]) as f64).sum::<f64>() / n;
    let var = edges
        .iter()
        .map(|&(u, v)| (deg[u] as f64 - mean).powi(2) + (deg[v] as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    let cov = edges
        .iter()
        .map(|&(u, v)| 2.0 * (deg[u] as f64 - mean) * (deg[v] as f64 - mean))
        .sum::<f64>()
        / n;
    if var <= 1e-15 * mean * mean {
        return Ok(Measure::undefined("all edge endpoints have the same degree"));
    }
    Ok(Measure::defined((cov / var).clamp(-1.0, 1.0)))
}
