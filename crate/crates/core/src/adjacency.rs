//! Dense binary adjacency matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square binary matrix. Row `i`, column `j` is set when `i` receives from
/// `j` (for undirected graphs the matrix is symmetric).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct Adjacency {
    n: usize,
    cells: Vec<bool>,
}

impl Adjacency {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            cells: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut a = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    a.set(i, j, true);
                }
            }
        }
        a
    }

    /// Builds an undirected adjacency from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut a = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            a.set_undirected(u, v, true);
        }
        Ok(a)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => a.set(i, j, true),
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "adjacency entry ({i}, {j}) = {other} is not binary"
                        )))
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.cells[i * self.n + j] = value;
    }

    pub fn set_undirected(&mut self, i: usize, j: usize, value: bool) {
        self.set(i, j, value);
        self.set(j, i, value);
    }

    /// Row sum, i.e. the in-degree `k_i = sum_j A_ij`.
    pub fn row_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.get(i, j)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.row_degree(i)).collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Checks the undirected simple-graph contract: symmetric, zero diagonal.
    pub fn validate_undirected(&self) -> Result<()> {
        if let Some(i) = (0..self.n).find(|&i| self.get(i, i)) {
            return Err(Error::SelfLoop(i));
        }
        if let Some((i, j)) = self.first_asymmetry() {
            return Err(Error::Asymmetric(i, j));
        }
        Ok(())
    }

    /// Undirected edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) || self.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

impl TryFrom<Vec<Vec<u8>>> for Adjacency {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl From<Adjacency> for Vec<Vec<u8>> {
    fn from(a: Adjacency) -> Self {
        a.to_rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_degrees() {
        let a = Adjacency::from_edges(4, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(a.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(a.degrees(), vec![2, 2, 2, 0]);
        a.validate_undirected().unwrap();
    }

    #[test]
    fn rejects_non_binary_and_asymmetric() {
        assert!(Adjacency::from_rows(&[vec![0, 2], vec![0, 0]]).is_err());
        let directed = Adjacency::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(
            directed.validate_undirected(),
            Err(Error::Asymmetric(0, 1))
        ));
    }

    #[test]
    fn json_is_list_of_lists() {
        let a = Adjacency::from_edges(3, &[(0, 2)]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[0,0,1],[0,0,0],[1,0,0]]");
        let back: Adjacency = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
