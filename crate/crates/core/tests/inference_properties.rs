use mirnet_core::inference::{
    jump_threshold, order_pairs, reconstruct_adjacency, reference_threshold, ThresholdDecision,
    ThresholdMethod,
};
use mirnet_core::MirMatrix;
use proptest::prelude::*;

fn labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("c{i}")).collect()
}

fn matrix(m: usize, values: &[f64], reference: Option<[usize; 2]>) -> MirMatrix {
    MirMatrix::from_pair_values(labels(m), values, reference).unwrap()
}

fn pair_values() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (3usize..9).prop_flat_map(|m| (Just(m), prop::collection::vec(0.0f64..1.0, m * (m - 1) / 2)))
}

fn fixed(tau: f64) -> ThresholdDecision {
    ThresholdDecision {
        tau,
        method: ThresholdMethod::Jump,
        jump_gap: 0.0,
        evidence: Vec::new(),
    }
}

proptest! {
    #[test]
    fn raising_tau_only_removes_edges((m, values) in pair_values(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let mir = matrix(m, &values, None);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let dense = reconstruct_adjacency(&mir, &fixed(lo)).adjacency;
        let sparse = reconstruct_adjacency(&mir, &fixed(hi)).adjacency;
        for (u, v) in sparse.edges() {
            prop_assert!(dense.get(u, v));
        }
    }

    #[test]
    fn reference_channels_never_get_edges((m, values) in pair_values(), r in 0usize..100) {
        let a = r % m;
        let b = (a + 1 + r / m % (m - 1)) % m;
        let mir = matrix(m, &values, Some([a.min(b), a.max(b)]));
        let decision = reference_threshold(&mir).unwrap();
        let net = reconstruct_adjacency(&mir, &decision);
        prop_assert_eq!(net.adjacency.len(), m - 2);
        prop_assert!(net.labels.iter().all(|l| l != &labels(m)[a] && l != &labels(m)[b]));
        net.adjacency.validate_undirected().unwrap();
        // The reference pair itself sits exactly at tau and stays unconnected.
        prop_assert!(!decision.connects(mir.value(a, b)));
    }

    #[test]
    fn jump_depends_only_on_order_and_differences((m, values) in pair_values(), shift in -0.5f64..0.5, scale in 0.1f64..10.0) {
        let base = matrix(m, &values, None);
        // Skip draws where a difference lies within rounding of the gap.
        let ordered = order_pairs(&base);
        let near_gap = ordered.windows(2).any(|w| ((w[1].value - w[0].value) - 0.1).abs() < 1e-9);
        prop_assume!(!near_gap);
        let Ok(d0) = jump_threshold(&ordered, 0.1) else { return Ok(()) };
        let a0 = reconstruct_adjacency(&base, &d0).adjacency;

        // A common shift keeps every difference.
        let shifted: Vec<f64> = values.iter().map(|v| v + shift).collect();
        let ms = matrix(m, &shifted, None);
        let ds = jump_threshold(&order_pairs(&ms), 0.1).unwrap();
        prop_assert_eq!(&reconstruct_adjacency(&ms, &ds).adjacency, &a0);

        // Scaling values and gap together keeps the chosen step.
        let scaled: Vec<f64> = values.iter().map(|v| v * scale).collect();
        let mc = matrix(m, &scaled, None);
        let dc = jump_threshold(&order_pairs(&mc), 0.1 * scale).unwrap();
        prop_assert_eq!(&reconstruct_adjacency(&mc, &dc).adjacency, &a0);
    }
}

#[test]
fn zero_tau_connects_everything() {
    let mir = matrix(4, &[0.0, 0.1, 0.2, 0.3, 0.4, 0.5], None);
    assert_eq!(reconstruct_adjacency(&mir, &fixed(0.0)).adjacency.edge_count(), 6);
}
