//! Monte-Carlo sampling of the exact bounds and experiment runners.

mod experiment;
mod sampling;
mod stats;

pub use experiment::{
    run_adaptive, run_bound_check, run_cdf, run_ergodic, sweep_csi, AdaptivePoint, BoundCheckPoint, CdfPoint,
    ErgodicPoint, Execution, ExperimentConfig, SweepRow, TargetRule,
};
pub use sampling::{
    sample_bf_bound, sample_full_bound, sample_gamma_int, sample_mrc_bound, sample_trimmed_exp_sum, FullBoundKind,
};
pub use stats::{ks_distance, normal_cdf, Ecdf, SummaryStats};
