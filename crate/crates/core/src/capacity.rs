//! Instantaneous and efficient capacity.

use serde::{Deserialize, Serialize};

use crate::channel::ChannelMatrix;
use crate::error::{invalid, RasError, Result};
use crate::linalg::{cholesky_log2_det, regularized_gram};

/// Fraction of the coherence time spent acquiring one round of CSI
/// (training time over coherence time).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyParams {
    eta: f64,
}

impl EfficiencyParams {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eta) {
            return invalid(format!("eta must lie in [0, 1), got {eta}"));
        }
        Ok(Self { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// `log2 det(I + rho_bar H H^H)` in bits/s/Hz.
///
/// `rho_bar` is the normalized (per-transmit-antenna) SNR on a linear scale.
pub fn capacity(h_sub: &ChannelMatrix, rho_bar: f64) -> Result<f64> {
    if !(rho_bar > 0.0) || !rho_bar.is_finite() {
        return invalid(format!("rho_bar must be positive, got {rho_bar}"));
    }
    let (n, m) = regularized_gram(h_sub, rho_bar);
    let c = cholesky_log2_det(&m, n).ok_or_else(|| {
        RasError::NumericFailure("regularized Gram matrix lost positive definiteness".into())
    })?;
    Ok(c.max(0.0))
}

/// Capacity discounted by the CSI acquisition overhead:
/// `c * (1 - csi_rows * eta / l)`.
///
/// The result is not clamped; it goes negative once acquiring `csi_rows`
/// rows through `l` RF chains takes longer than the coherence time.
pub fn efficient_capacity(c: f64, csi_rows: usize, l: usize, eff: EfficiencyParams) -> Result<f64> {
    if l == 0 {
        return invalid("l must be at least 1");
    }
    if c < 0.0 {
        return invalid(format!("capacity must be nonnegative, got {c}"));
    }
    Ok(c * (1.0 - csi_rows as f64 * eff.eta / l as f64))
}

/// Converts a dB value to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
