//! Receive antenna selection for massive MIMO over i.i.d. Rayleigh fading.
//!
//! - [`channel`] and [`rng`]: reproducible channel draws and row subsets.
//! - [`capacity`]: log-det capacity and CSI-discounted efficient capacity.
//! - [`selection`]: exhaustive, branch-and-bound, greedy and norm-based
//!   selection, plus adaptive selection that acquires CSI row by row.
//! - [`bounds`]: Gaussian approximations of the BF and MRC upper bounds and
//!   the gap-corrected ergodic capacity.
//! - [`montecarlo`]: exact-bound sampling and experiment runners.
//!
//! SNR arguments named `rho_bar` are linear normalized SNR (per transmit
//! antenna); dB conversion happens at the edges.

pub mod bounds;
pub mod capacity;
pub mod channel;
pub mod error;
mod linalg;
pub mod montecarlo;
pub mod rng;
pub mod selection;

pub use bounds::{BoundKind, GaussianBound, TrimmedSumParams};
pub use capacity::{capacity, db_to_linear, efficient_capacity, linear_to_db, EfficiencyParams};
pub use channel::{row_norms_sq, row_subset, sample_channel, ChannelMatrix};
pub use error::{RasError, Result};
pub use montecarlo::{Execution, ExperimentConfig, SummaryStats};
pub use rng::{derive_stream, RngStream};
pub use selection::{AdaptiveConfig, AdaptiveOutcome, SelectionResult, SelectorKind};
