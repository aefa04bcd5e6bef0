//! Gaussian approximations of the beamforming (BF) and hybrid
//! selection/maximum-ratio-combining (MRC) upper capacity bounds, the
//! empirical gap model, and the gap-corrected ergodic capacity.

mod bf;
mod chi2;
mod gap;
mod mrc;
pub mod quadrature;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bf::{bf_bound_params, bf_bound_params_with_tol};
pub use chi2::{chi2_pdf, chi2_tail, chi2_tail_threshold};
pub use gap::{approx_ergodic_capacity, gap, GapModel};
pub use mrc::{mrc_bound_params, mrc_bound_params_with_tol, mrc_trimmed_params, TrimmedSumParams};

use crate::error::{invalid, Result};

/// Default relative tolerance for the bound integrals.
pub const BOUND_REL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Best `l` of `nr` beamforming MISO links; intended for `l <= nt`.
    Bf,
    /// `nt` independent SIMO links each combining its best `l` antennas;
    /// intended for `l > nt`.
    Mrc,
}

impl BoundKind {
    /// The bound whose regime covers `l` for `nt` transmit antennas.
    pub fn for_regime(nt: usize, l: usize) -> Self {
        if l <= nt {
            BoundKind::Bf
        } else {
            BoundKind::Mrc
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Bf => "bf",
            BoundKind::Mrc => "mrc",
        })
    }
}

/// Mean and variance of the Gaussian approximating an upper capacity bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianBound {
    pub kind: BoundKind,
    pub mean: f64,
    pub variance: f64,
    pub nr: usize,
    pub nt: usize,
    pub l: usize,
    pub rho_bar: f64,
    /// Trimming threshold on the per-branch gain: `Q(nt, u) = l / nr` for BF,
    /// `ln(nr / l)` for MRC.
    pub threshold_u: f64,
}

/// Evaluates the bound of the given kind.
pub fn bound_params(kind: BoundKind, nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<GaussianBound> {
    match kind {
        BoundKind::Bf => bf_bound_params(nr, nt, l, rho_bar),
        BoundKind::Mrc => mrc_bound_params(nr, nt, l, rho_bar),
    }
}

pub(crate) fn check_dims(nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<()> {
    if nr == 0 || nt == 0 || l == 0 {
        return invalid(format!("dimensions must be positive (nr={nr}, nt={nt}, l={l})"));
    }
    if l > nr {
        return invalid(format!("l = {l} exceeds nr = {nr}"));
    }
    if !(rho_bar > 0.0) || !rho_bar.is_finite() {
        return invalid(format!("rho_bar must be positive, got {rho_bar}"));
    }
    Ok(())
}

#[inline]
pub(crate) fn log2_1p(rho_bar: f64, x: f64) -> f64 {
    (rho_bar * x).ln_1p() / std::f64::consts::LN_2
}
