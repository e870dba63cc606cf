//! Independent blocks of correlated normal variates.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::seeded_rng;
use crate::error::{Error, Result};
use crate::series::{SeriesMatrix, SourceMeta};

const PSD_TOLERANCE: f64 = 1e-10;

/// What to do with a block whose covariance has a negative eigenvalue.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonPsdPolicy {
    #[default]
    Reject,
    /// Replace each eigenvalue by its absolute value, which is what an
    /// SVD-based multivariate normal sampler does with an indefinite matrix.
    /// The realised covariance is then `Q |L| Q^T`.
    Reflect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianBlockSpec {
    pub blocks: Vec<Vec<Vec<f64>>>,
    pub length: usize,
    pub seed: u64,
    #[serde(default)]
    pub non_psd: NonPsdPolicy,
}

/// Returns `F` with `F F^T = cov` (or its reflected version).
fn factor(block: usize, rows: &[Vec<f64>], policy: NonPsdPolicy) -> Result<(DMatrix<f64>, Option<String>)> {
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidParameter(format!("block {block} is not square")));
    }
    let cov = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
    for i in 0..d {
        for j in (i + 1)..d {
            if (cov[(i, j)] - cov[(j, i)]).abs() > PSD_TOLERANCE {
                return Err(Error::InvalidParameter(format!("block {block} is not symmetric")));
            }
        }
    }
    if let Some(ch) = cov.clone().cholesky() {
        return Ok((ch.l(), None));
    }
    let eig = SymmetricEigen::new(cov);
    let min = eig.eigenvalues.min();
    let scale = eig.eigenvalues.amax().max(1.0);
    let mut warning = None;
    let roots: DVector<f64> = if min >= -PSD_TOLERANCE * scale {
        eig.eigenvalues.map(|v| v.max(0.0).sqrt())
    } else {
        match policy {
            NonPsdPolicy::Reject => {
                return Err(Error::NotPsd {
                    block,
                    min_eigenvalue: min,
                })
            }
            NonPsdPolicy::Reflect => {
                let msg = format!(
                    "covariance block {block} is indefinite (min eigenvalue {min:.6}); sampling with |eigenvalues|"
                );
                log::warn!("{msg}");
                warning = Some(msg);
                eig.eigenvalues.map(|v| v.abs().sqrt())
            }
        }
    };
    Ok((eig.eigenvectors * DMatrix::from_diagonal(&roots), warning))
}

/// Draws `length` rows; within a block, `x = F z` with `z ~ N(0, I)`.
/// Blocks are sampled independently, so cross-block covariance is zero.
pub fn gen_correlated_gaussians(spec: &GaussianBlockSpec) -> Result<SeriesMatrix> {
    if spec.blocks.is_empty() {
        return Err(Error::InvalidParameter("no covariance blocks".into()));
    }
    if spec.length < 2 {
        return Err(Error::TooFewRows);
    }
    let mut factors = Vec::with_capacity(spec.blocks.len());
    let mut warnings = Vec::new();
    for (b, rows) in spec.blocks.iter().enumerate() {
        let (f, w) = factor(b + 1, rows, spec.non_psd)?;
        warnings.extend(w);
        factors.push(f);
    }
    let width: usize = factors.iter().map(|f| f.nrows()).sum();
    if width < 2 {
        return Err(Error::TooFewChannels);
    }

    let mut rng = seeded_rng(spec.seed);
    let mut columns: Vec<Vec<f64>> = (0..width).map(|_| Vec::with_capacity(spec.length)).collect();
    let max_d = factors.iter().map(|f| f.nrows()).max().unwrap_or(0);
    let mut z = vec![0.0; max_d];
    for _ in 0..spec.length {
        let mut offset = 0;
        for f in &factors {
            let d = f.nrows();
            for zi in z.iter_mut().take(d) {
                *zi = StandardNormal.sample(&mut rng);
            }
            for i in 0..d {
                let v: f64 = (0..d).map(|j| f[(i, j)] * z[j]).sum();
                columns[offset + i].push(v);
            }
            offset += d;
        }
    }

    let labels = (1..=width).map(|i| format!("x{i}")).collect();
    let meta = SourceMeta {
        source: "correlated-gaussians".into(),
        params: serde_json::to_value(spec)?,
        seed: Some(spec.seed),
        adjacency: None,
        warnings,
    };
    SeriesMatrix::new(columns, labels, meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cov(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let ma = a.iter().sum::<f64>() / n;
        let mb = b.iter().sum::<f64>() / n;
        a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (n - 1.0)
    }

    #[test]
    fn sample_covariance_matches_block() {
        let sigma = vec![
            vec![3.40, -2.75, -2.00],
            vec![-2.75, 5.50, 1.50],
            vec![-2.00, 1.50, 1.25],
        ];
        let s = gen_correlated_gaussians(&GaussianBlockSpec {
            blocks: vec![sigma.clone(), vec![vec![1.0]]],
            length: 100_000,
            seed: 9,
            non_psd: NonPsdPolicy::Reject,
        })
        .unwrap();
        assert_eq!(s.channels(), 4);
        for i in 0..3 {
            for j in 0..3 {
                let c = cov(s.column(i), s.column(j));
                assert!((c - sigma[i][j]).abs() <= 0.05 * sigma[i][j].abs(), "{i},{j}: {c}");
            }
        }
        let v = cov(s.column(3), s.column(3));
        assert!((v - 1.0).abs() < 0.05);
    }

    #[test]
    fn indefinite_block_is_rejected_unless_reflected() {
        let sigma3 = vec![
            vec![1.40, -2.75, -2.00],
            vec![-2.75, 5.50, -1.00],
            vec![-2.00, -1.00, 3.25],
        ];
        let mut spec = GaussianBlockSpec {
            blocks: vec![sigma3],
            length: 100,
            seed: 1,
            non_psd: NonPsdPolicy::Reject,
        };
        assert!(matches!(gen_correlated_gaussians(&spec), Err(Error::NotPsd { block: 1, .. })));
        spec.non_psd = NonPsdPolicy::Reflect;
        let s = gen_correlated_gaussians(&spec).unwrap();
        assert_eq!(s.meta().warnings.len(), 1);
    }

    #[test]
    fn semidefinite_block_is_accepted() {
        // rank one: x2 = x1
        let s = gen_correlated_gaussians(&GaussianBlockSpec {
            blocks: vec![vec![vec![1.0, 1.0], vec![1.0, 1.0]]],
            length: 1000,
            seed: 2,
            non_psd: NonPsdPolicy::Reject,
        })
        .unwrap();
        for t in 0..1000 {
            assert!((s.get(t, 0) - s.get(t, 1)).abs() < 1e-9);
        }
    }
}
