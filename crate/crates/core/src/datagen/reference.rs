//! Reference channel pairs whose MIR calibrates the inference threshold.

use rand::Rng;

use super::maps::{simulate, CouplingSpec, MapKind};
use super::{seeded_rng, DEFAULT_TRANSIENT};
use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::series::{SeriesMatrix, SourceMeta};

/// Labels given to attached reference channels.
pub const REFERENCE_LABELS: [&str; 2] = ["_ref1", "_ref2"];

/// Two independent i.i.d. uniform `[0, 1)` channels.
pub fn gen_uniform_pair(length: usize, seed: u64) -> Result<SeriesMatrix> {
    if length < 2 {
        return Err(Error::TooFewRows);
    }
    let mut rng = seeded_rng(seed);
    let mut a = Vec::with_capacity(length);
    let mut b = Vec::with_capacity(length);
    for _ in 0..length {
        a.push(rng.random::<f64>());
        b.push(rng.random::<f64>());
    }
    let meta = SourceMeta {
        source: "uniform-pair".into(),
        params: serde_json::json!({ "length": length }),
        seed: Some(seed),
        ..SourceMeta::default()
    };
    SeriesMatrix::new(vec![a, b], vec!["u1".into(), "u2".into()], meta)
}

/// Two logistic maps (`r = 4`) where the second drives the first:
/// adjacency `[[0, 1], [0, 0]]`.
pub fn gen_directed_logistic_pair(alpha: f64, length: usize, seed: u64) -> Result<SeriesMatrix> {
    let adjacency = Adjacency::from_rows(&[vec![0, 1], vec![0, 0]])?;
    let mut s = simulate(&CouplingSpec {
        adjacency,
        alpha,
        map: MapKind::Logistic { r: 4.0 },
        transient: DEFAULT_TRANSIENT,
        length,
        seed,
    })?;
    // The driver is autonomous by construction.
    s.meta_mut().warnings.clear();
    s.meta_mut().source = "directed-logistic-pair".into();
    Ok(s)
}

/// Appends a reference pair as two extra channels flagged in the result.
///
/// If the row counts differ, both inputs are cut to the shorter length.
pub fn attach_reference_pair(data: &SeriesMatrix, reference: &SeriesMatrix) -> Result<SeriesMatrix> {
    if data.reference_columns().is_some() {
        return Err(Error::ReferenceAlreadyPresent);
    }
    if reference.channels() != 2 {
        return Err(Error::InvalidParameter(format!(
            "reference must have 2 channels, got {}",
            reference.channels()
        )));
    }
    let rows = data.rows().min(reference.rows());
    let mut warnings = data.meta().warnings.clone();
    if data.rows() != reference.rows() {
        let msg = format!(
            "row counts differ (data {}, reference {}); truncated to {rows}",
            data.rows(),
            reference.rows()
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let mut columns: Vec<Vec<f64>> = data.columns().iter().map(|c| c[..rows].to_vec()).collect();
    columns.extend(reference.columns().iter().map(|c| c[..rows].to_vec()));
    let mut labels = data.labels().to_vec();
    labels.extend(REFERENCE_LABELS.iter().map(|s| s.to_string()));

    let mut meta = data.meta().clone();
    meta.warnings = warnings;
    let m = data.channels();
    let mut out = SeriesMatrix::new(columns, labels, meta)?;
    out.set_reference_columns([m, m + 1]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(rows: usize) -> SeriesMatrix {
        let cols = (0..6).map(|m| (0..rows).map(|t| (t * (m + 1)) as f64).collect()).collect();
        SeriesMatrix::new(cols, SeriesMatrix::default_labels(6), SourceMeta::new("d")).unwrap()
    }

    #[test]
    fn uniform_pair_contract() {
        let a = gen_uniform_pair(1000, 4).unwrap();
        assert_eq!(a, gen_uniform_pair(1000, 4).unwrap());
        assert!(a.columns().iter().flatten().all(|v| (0.0..1.0).contains(v)));
        assert!(gen_uniform_pair(1, 4).is_err());
    }

    #[test]
    fn directed_pair_driver_is_pure_logistic() {
        let s = gen_directed_logistic_pair(0.1, 500, 3).unwrap();
        let (x1, x2) = (s.column(0), s.column(1));
        for t in 0..499 {
            assert_eq!(x2[t + 1], 4.0 * x2[t] * (1.0 - x2[t]));
            let f = |x: f64| 4.0 * x * (1.0 - x);
            let expected = 0.9 * f(x1[t]) + 0.1 * f(x2[t]);
            assert!((x1[t + 1] - expected).abs() < 1e-15);
        }
        assert_eq!(s, gen_directed_logistic_pair(0.1, 500, 3).unwrap());
    }

    #[test]
    fn directed_pair_without_coupling_is_two_free_orbits() {
        let s = gen_directed_logistic_pair(0.0, 200, 3).unwrap();
        for m in 0..2 {
            for w in s.column(m).windows(2) {
                assert_eq!(w[1], 4.0 * w[0] * (1.0 - w[0]));
            }
        }
    }

    #[test]
    fn attach_flags_and_truncates() {
        let out = attach_reference_pair(&data(100), &gen_uniform_pair(100, 1).unwrap()).unwrap();
        assert_eq!(out.channels(), 8);
        assert_eq!(out.reference_columns(), Some([6, 7]));
        assert_eq!(&out.labels()[6..], &["_ref1", "_ref2"]);

        let cut = attach_reference_pair(&data(100), &gen_uniform_pair(120, 1).unwrap()).unwrap();
        assert_eq!(cut.rows(), 100);
        assert_eq!(cut.meta().warnings.len(), 1);

        let again = attach_reference_pair(&out, &gen_uniform_pair(100, 2).unwrap());
        assert!(matches!(again, Err(Error::ReferenceAlreadyPresent)));
    }
}
