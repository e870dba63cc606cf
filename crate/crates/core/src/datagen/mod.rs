//! Synthetic datasets and real-data ingestion.
//!
//! Every generator is a pure function of its spec: randomness comes from a
//! [`ChaCha8Rng`](rand_chacha::ChaCha8Rng) seeded with
//! `SeedableRng::seed_from_u64(seed)`, so identical specs give bit-identical
//! matrices on every platform.

mod csv_io;
mod gaussian;
mod maps;
pub mod presets;
mod reference;
mod transform;

pub use csv_io::{load_csv, read_csv, write_csv};
pub use gaussian::{gen_correlated_gaussians, GaussianBlockSpec, NonPsdPolicy};
pub use maps::{gen_coupled_map_network, CouplingSpec, MapKind};
pub use reference::{
    attach_reference_pair, gen_directed_logistic_pair, gen_uniform_pair, REFERENCE_LABELS,
};
pub use transform::log_returns;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default number of discarded iterations for map networks.
pub const DEFAULT_TRANSIENT: usize = 1000;
/// Default sample length for every synthetic experiment.
pub const DEFAULT_LENGTH: usize = 100_000;

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for an auxiliary generator tied to `seed`, e.g. a reference pair
/// attached to data generated from `seed`. The value comes from a separate
/// ChaCha stream, so the two generators never share random draws.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = seeded_rng(seed);
    rng.set_stream(stream.wrapping_add(1));
    rng.next_u64()
}
