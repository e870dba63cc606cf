use mirnet_core::datagen::{
    self, gen_correlated_gaussians, gen_uniform_pair, presets, GaussianBlockSpec, NonPsdPolicy,
};
use mirnet_core::estimator::{build_joint_histogram, mutual_information, pair_mir, MirEstimator};
use mirnet_core::inference::{jump_threshold, order_pairs, reconstruct_adjacency, DEFAULT_GAP};
use mirnet_core::{SeriesMatrix, SourceMeta};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

#[test]
fn gaussian_blocks_are_mutually_independent() {
    let s = gen_correlated_gaussians(&GaussianBlockSpec {
        blocks: presets::sigma_blocks(),
        length: 100_000,
        seed: 4,
        non_psd: NonPsdPolicy::Reflect,
    })
    .unwrap();
    for i in 0..9 {
        for j in i + 1..9 {
            let r = pearson(s.column(i), s.column(j));
            if i / 3 != j / 3 {
                assert!(r.abs() < 0.02, "x{} x{}: {r}", i + 1, j + 1);
            }
        }
    }
    // Strongest and weakest within-block pairs after reflection.
    assert!(pearson(s.column(0), s.column(2)) < -0.9);
    assert!(pearson(s.column(7), s.column(8)).abs() < 0.2);
}

#[test]
fn uniform_pair_is_uncorrelated_and_in_range() {
    let s = gen_uniform_pair(100_000, 9).unwrap();
    assert!(pearson(s.column(0), s.column(1)).abs() < 0.02);
    assert!(s.columns().iter().flatten().all(|&v| (0.0..1.0).contains(&v)));
}

#[test]
fn independent_pair_mi_is_within_shuffle_surrogates() {
    let s = gen_uniform_pair(20_000, 21).unwrap();
    let (x, y) = (s.column(0), s.column(1));
    let n = 10;
    let mi = mutual_information(&build_joint_histogram(x, y, n).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let surrogates: Vec<f64> = (0..40)
        .map(|_| {
            let mut ys = y.to_vec();
            ys.shuffle(&mut rng);
            mutual_information(&build_joint_histogram(x, &ys, n).unwrap())
        })
        .collect();
    let mean = surrogates.iter().sum::<f64>() / 40.0;
    let sd = (surrogates.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 39.0).sqrt();
    assert!(mi < mean + 4.0 * sd, "mi {mi}, surrogates {mean} +- {sd}");
}

#[test]
fn duplicated_channel_dominates() {
    let base = presets::preset("paper-isolated", 3).unwrap().with_length(20_000).generate().unwrap();
    let mut cols = base.columns()[..3].to_vec();
    cols.push(cols[0].clone());
    let labels = ["a", "b", "c", "a_copy"].map(String::from).to_vec();
    let s = SeriesMatrix::new(cols, labels, SourceMeta::new("test")).unwrap();
    let a = MirEstimator::default().estimate(&s).unwrap();
    let top = order_pairs(&a.matrix).pop().unwrap();
    assert_eq!((top.left, top.right), (0, 3));
    assert_eq!(top.value, 1.0);
}

#[test]
fn coupled_cmn_pair_beats_uncoupled_pair() {
    let s = presets::preset("paper-cmn", 2).unwrap().with_length(30_000).generate().unwrap();
    let truth = presets::cmn_adjacency();
    let (cu, cv) = truth.edges()[0];
    let (uu, uv) = (0..16)
        .flat_map(|u| (u + 1..16).map(move |v| (u, v)))
        .find(|&(u, v)| !truth.get(u, v))
        .unwrap();
    let coupled = pair_mir(s.column(cu), s.column(cv), 10, 1).unwrap();
    let uncoupled = pair_mir(s.column(uu), s.column(uv), 10, 1).unwrap();
    assert!(coupled > uncoupled, "{coupled} vs {uncoupled}");
}

#[test]
fn cmn_edges_are_stable_between_nested_prefixes() {
    let full = presets::preset("paper-cmn", 5).unwrap().generate().unwrap();
    let half_cols: Vec<Vec<f64>> = full.columns().iter().map(|c| c[..50_000].to_vec()).collect();
    let half = SeriesMatrix::new(half_cols, full.labels().to_vec(), full.meta().clone()).unwrap();
    let edges = |s: &SeriesMatrix| {
        let a = MirEstimator::default().estimate(s).unwrap();
        let d = jump_threshold(&order_pairs(&a.matrix), DEFAULT_GAP).unwrap();
        reconstruct_adjacency(&a.matrix, &d).adjacency
    };
    let big = edges(&full);
    assert_eq!(big, edges(&half));
    assert_eq!(big, presets::cmn_adjacency());
}

#[test]
fn csv_file_round_trip() {
    let s = gen_uniform_pair(50, 1).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let mut bytes = Vec::new();
    datagen::write_csv(&s, &mut bytes).unwrap();
    std::fs::write(&path, bytes).unwrap();
    let back = datagen::load_csv(&path, true).unwrap();
    assert_eq!(back.columns(), s.columns());
    assert_eq!(back.labels(), s.labels());
}
