use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicStats {
    pub degrees: Vec<usize>,
    pub n_edges: usize,
    /// Node sets of the connected components, each sorted, ordered by their
    /// smallest node.
    pub components: Vec<Vec<usize>>,
}

pub fn basic_stats(adj: &Adjacency) -> Result<BasicStats> {
    adj.validate_undirected()?;
    Ok(BasicStats {
        degrees: adj.degrees(),
        n_edges: adj.edge_count(),
        components: connected_components(adj),
    })
}

pub fn connected_components(adj: &Adjacency) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in adj.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Largest connected component; ties go to the one with the smallest node.
pub fn largest_component(adj: &Adjacency) -> Vec<usize> {
    connected_components(adj)
        .into_iter()
        .fold(Vec::new(), |best, c| if c.len() > best.len() { c } else { best })
}

/// Local clustering coefficient of node `i`; 0 for degree below 2.
pub fn local_clustering(adj: &Adjacency, i: usize) -> f64 {
    let nbrs: Vec<usize> = adj.neighbors(i).collect();
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (a, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[a + 1..] {
            if adj.get(u, v) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

pub fn average_clustering(adj: &Adjacency) -> f64 {
    let n = adj.len();
    if n == 0 {
        return 0.0;
    }
    (0..n).map(|i| local_clustering(adj, i)).sum::<f64>() / n as f64
}

/// Mean shortest-path length over ordered node pairs of the largest
/// component. A single-node component has no pairs and yields 0.
pub fn average_path_length(adj: &Adjacency) -> f64 {
    let comp = largest_component(adj);
    let c = comp.len();
    if c < 2 {
        return 0.0;
    }
    let mut dist = vec![usize::MAX; adj.len()];
    let mut total = 0usize;
    for &s in &comp {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in adj.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    total += dist[v];
                    queue.push_back(v);
                }
            }
        }
    }
    total as f64 / (c * (c - 1)) as f64
}

/// Average clustering `C` over all nodes and mean path length `L` over the
/// largest component.
pub fn clustering_and_path(adj: &Adjacency) -> Result<(f64, f64)> {
    adj.validate_undirected()?;
    if adj.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "clustering and path length need at least 3 nodes, got {}",
            adj.len()
        )));
    }
    Ok((average_clustering(adj), average_path_length(adj)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_stats() {
        let t = Adjacency::complete(3);
        let s = basic_stats(&t).unwrap();
        assert_eq!(s.degrees, vec![2, 2, 2]);
        assert_eq!(s.n_edges, 3);
        assert_eq!(s.components.len(), 1);
        assert_eq!(clustering_and_path(&t).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn empty_graph_has_singleton_components() {
        let s = basic_stats(&Adjacency::empty(6)).unwrap();
        assert_eq!(s.n_edges, 0);
        assert_eq!(s.components.len(), 6);
    }

    #[test]
    fn two_triangles() {
        let g = Adjacency::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let s = basic_stats(&g).unwrap();
        assert_eq!(s.n_edges, 6);
        assert_eq!(s.components, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn path_of_three() {
        let g = Adjacency::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (c, l) = clustering_and_path(&g).unwrap();
        assert_eq!(c, 0.0);
        // distances 1, 1, 2 over the three unordered pairs
        assert!((l - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn k4_is_fully_clustered() {
        assert_eq!(clustering_and_path(&Adjacency::complete(4)).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut g = Adjacency::empty(3);
        g.set(0, 1, true);
        assert!(matches!(basic_stats(&g), Err(Error::Asymmetric(..))));
    }

    #[test]
    fn path_length_uses_largest_component() {
        let g = Adjacency::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(largest_component(&g), vec![2, 3, 4]);
        assert!((average_path_length(&g) - 4.0 / 3.0).abs() < 1e-15);
    }
}
