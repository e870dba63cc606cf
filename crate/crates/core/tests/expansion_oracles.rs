use std::f64::consts::LN_2;

use mirnet_core::datagen::{gen_coupled_map_network, gen_uniform_pair, CouplingSpec, MapKind};
use mirnet_core::estimator::{correlation_decay_time, expansion_rate, max_grid_size};
use mirnet_core::Adjacency;

const LENGTH: usize = 100_000;

fn logistic_pair(seed: u64) -> (Vec<f64>, Vec<f64>) {
    let s = gen_coupled_map_network(&CouplingSpec {
        adjacency: Adjacency::empty(2),
        alpha: 0.0,
        map: MapKind::Logistic { r: 4.0 },
        transient: 1000,
        length: LENGTH,
        seed,
    })
    .unwrap();
    let mut cols = s.into_columns();
    let y = cols.pop().unwrap();
    (cols.pop().unwrap(), y)
}

/// Benettin-style estimate: the time average of ln|f'(x)| along an orbit of
/// f(x) = 4x(1 - x), i.e. ln|4 - 8x|.
fn logistic_lyapunov(orbit: &[f64]) -> f64 {
    orbit.iter().map(|&x| (4.0 - 8.0 * x).abs().ln()).sum::<f64>() / orbit.len() as f64
}

#[test]
fn lyapunov_oracle_recovers_ln2() {
    let (x, _) = logistic_pair(11);
    assert!((logistic_lyapunov(&x) - LN_2).abs() < 0.01);
}

#[test]
fn logistic_expansion_rate_is_bounded_by_lyapunov() {
    let (x, y) = logistic_pair(11);
    let lambda = logistic_lyapunov(&x);
    let e1 = expansion_rate(&x, &y, 10, 3).unwrap();
    assert!(e1 > 0.0, "e1 = {e1}");
    assert!(e1 <= LN_2 + 0.05, "e1 = {e1}, lambda = {lambda}");
}

#[test]
fn uniform_noise_decorrelates_in_one_step() {
    // Independent draws fill the square immediately: T(N) is close to 1 for
    // a one-step horizon at every grid size.
    let s = gen_uniform_pair(LENGTH, 5).unwrap();
    for n in [4, 10, 17] {
        let e1 = expansion_rate(s.column(0), s.column(1), n, 1).unwrap();
        let t = correlation_decay_time(e1, n).unwrap();
        assert!((t - 1.0).abs() < 0.25, "N = {n}: T = {t}");
    }
}

#[test]
fn fully_occupied_square_gives_fourth_root_of_length() {
    // With every cell occupied, T >= N^4 holds up to floor(T^(1/4)).
    let s = gen_uniform_pair(LENGTH, 6).unwrap();
    let expected = (LENGTH as f64).powf(0.25).floor() as usize;
    assert_eq!(expected, 17);
    assert_eq!(max_grid_size(s.column(0), s.column(1), None).unwrap(), expected);
}
