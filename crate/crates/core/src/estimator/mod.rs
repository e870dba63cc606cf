//! Mutual information rate between every pair of channels.
//!
//! For a pair `(X, Y)` and grid size `N`:
//!
//! * `I(N)` is the histogram mutual information on an `N x N` grid,
//! * `e1(N)` is the largest expansion rate of points in that grid,
//! * `T(N) = ln(N) / e1(N)` is the correlation decay time,
//! * `MIR(N) = I(N) / T(N)`.
//!
//! Across all pairs, `MIR(N)` is min-max normalised for each `N`; the
//! normalised values are summed over `N` in `[ceil(0.2 N_max), N_max]` and
//! divided by the largest pair sum, giving the matrix used for inference.

mod expansion;
mod histogram;
mod mir;
mod occupancy;

pub use expansion::{diameter, expansion_rate, expansion_summary, ExpansionSummary, DEFAULT_HORIZON};
pub use histogram::{
    build_joint_histogram, entropy_of_counts, joint_entropy, marginal_entropy, mutual_information,
    mutual_information_direct, Axis, AxisBinning, JointHistogram,
};
pub use mir::{
    correlation_decay_time, grid_range, mir_bar, mir_hat_per_grid, pair_mir, GridRecord, MirAnalysis,
    MirEstimator, MirFile, MirMatrix, PairTable,
};
pub use occupancy::{max_grid_size, occupancy, occupancy_condition};
