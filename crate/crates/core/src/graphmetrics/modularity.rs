use serde::{Deserialize, Serialize};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub q: f64,
    /// Community index per node, numbered in order of each community's
    /// smallest node.
    pub communities: Vec<usize>,
}

/// Newman modularity `Q = sum_c [ L_c / m - (d_c / 2m)^2 ]` of a node
/// labelling, where `L_c` counts edges inside community `c` and `d_c` sums
/// its degrees.
pub fn modularity(adj: &Adjacency, communities: &[usize]) -> Result<f64> {
    adj.validate_undirected()?;
    if communities.len() != adj.len() {
        return Err(Error::SizeMismatch(communities.len(), adj.len()));
    }
    let edges = adj.edges();
    if edges.is_empty() {
        return Err(Error::InvalidParameter("modularity of a graph without edges".into()));
    }
    let m = edges.len() as f64;
    let k = communities.iter().max().map_or(0, |&c| c + 1);
    let mut inside = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for &(u, v) in &edges {
        degree[communities[u]] += 1;
        degree[communities[v]] += 1;
        if communities[u] == communities[v] {
            inside[communities[u]] += 1;
        }
    }
    Ok((0..k)
        .map(|c| inside[c] as f64 / m - (degree[c] as f64 / (2.0 * m)).powi(2))
        .sum())
}

/// Greedy agglomerative modularity maximisation. Starting from singletons,
/// repeatedly merges the pair of communities with the largest gain
/// `dQ = L_ab / m - 2 d_a d_b / (2m)^2` until no merge gains. Ties go to the
/// pair whose communities have the lowest smallest nodes.
pub fn modularity_partition(adj: &Adjacency) -> Result<Partition> {
    adj.validate_undirected()?;
    let n = adj.len();
    let edges = adj.edges();
    if edges.is_empty() {
        return Err(Error::InvalidParameter("modularity of a graph without edges".into()));
    }
    let m = edges.len() as f64;
    let two_m = 2.0 * m;

    // Community `c` is identified by its smallest node, so ascending ids
    // give the tie rule directly.
    let mut alive = vec![true; n];
    let mut owner: Vec<usize> = (0..n).collect();
    let mut degree: Vec<f64> = adj.degrees().iter().map(|&d| d as f64).collect();
    let mut links = vec![vec![0usize; n]; n];
    for &(u, v) in &edges {
        links[u][v] += 1;
        links[v][u] += 1;
    }

    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in (0..n).filter(|&a| alive[a]) {
            for b in (a + 1..n).filter(|&b| alive[b] && links[a][b] > 0) {
                let gain = links[a][b] as f64 / m - 2.0 * degree[a] * degree[b] / (two_m * two_m);
                if best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, a, b));
                }
            }
        }
        let Some((gain, a, b)) = best else { break };
        if gain <= 0.0 {
            break;
        }
        alive[b] = false;
        degree[a] += degree[b];
        for c in 0..n {
            let l = links[b][c];
            links[a][c] += l;
            links[c][a] += l;
            links[b][c] = 0;
            links[c][b] = 0;
        }
        links[a][a] = 0;
        owner.iter_mut().filter(|o| **o == b).for_each(|o| *o = a);
    }

    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    let communities = owner
        .iter()
        .map(|&o| {
            if index[o] == usize::MAX {
                index[o] = next;
                next += 1;
            }
            index[o]
        })
        .collect::<Vec<_>>();
    let q = modularity(adj, &communities)?;
    Ok(Partition { q, communities })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_triangles_split() {
        let g = Adjacency::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = modularity_partition(&g).unwrap();
        assert_eq!(p.communities, vec![0, 0, 0, 1, 1, 1]);
        assert!((p.q - 0.5).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_is_one_community() {
        let p = modularity_partition(&Adjacency::complete(5)).unwrap();
        assert!(p.communities.iter().all(|&c| c == 0));
        assert!(p.q.abs() < 1e-12);
    }

    #[test]
    fn single_edge() {
        let g = Adjacency::from_edges(2, &[(0, 1)]).unwrap();
        let p = modularity_partition(&g).unwrap();
        assert_eq!(p.communities, vec![0, 0]);
        assert!(p.q.abs() < 1e-12);
    }

    #[test]
    fn isolated_nodes_stay_alone() {
        let g = Adjacency::from_edges(4, &[(0, 1)]).unwrap();
        let p = modularity_partition(&g).unwrap();
        assert_eq!(p.communities, vec![0, 0, 1, 2]);
    }

    #[test]
    fn edgeless_graph_rejected() {
        assert!(modularity_partition(&Adjacency::empty(3)).is_err());
    }
}
