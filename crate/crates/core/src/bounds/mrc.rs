use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use super::{check_dims, log2_1p, BoundKind, GaussianBound, BOUND_REL_TOL};
use crate::error::{invalid, Result};

/// Mean and variance of the Gaussian approximating the sum of the `l`
/// largest of `nr` i.i.d. unit exponentials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrimmedSumParams {
    pub mu_t: f64,
    pub sigma_t_sq: f64,
}

/// `mu_t = l (1 + ln(nr/l))`, `sigma_t^2 = l (2 - l/nr)`.
pub fn mrc_trimmed_params(nr: usize, l: usize) -> Result<TrimmedSumParams> {
    if l == 0 || l > nr {
        return invalid(format!("need 1 <= l <= nr, got l={l}, nr={nr}"));
    }
    let (nr, l) = (nr as f64, l as f64);
    Ok(TrimmedSumParams {
        mu_t: l * (1.0 + (nr / l).ln()),
        sigma_t_sq: l * (2.0 - l / nr),
    })
}

/// Gaussian approximation of `sum_{h<=nt} log2(1 + rho_bar * t_h)` with the
/// `t_h` i.i.d. N(mu_t, sigma_t^2). The Gaussian expectations are taken over
/// `[max(0, mu_t - 10 sigma_t), mu_t + 10 sigma_t]`.
pub fn mrc_bound_params(nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<GaussianBound> {
    mrc_bound_params_with_tol(nr, nt, l, rho_bar, BOUND_REL_TOL)
}

pub fn mrc_bound_params_with_tol(nr: usize, nt: usize, l: usize, rho_bar: f64, rel_tol: f64) -> Result<GaussianBound> {
    check_dims(nr, nt, l, rho_bar)?;
    let TrimmedSumParams { mu_t, sigma_t_sq } = mrc_trimmed_params(nr, l)?;
    let sigma_t = sigma_t_sq.sqrt();
    let lo = (mu_t - 10.0 * sigma_t).max(0.0);
    let hi = mu_t + 10.0 * sigma_t;
    let norm = 1.0 / (2.0 * PI * sigma_t_sq).sqrt();
    let density = |t: f64| norm * (-(t - mu_t).powi(2) / (2.0 * sigma_t_sq)).exp();

    let m1 = integrate(|t| log2_1p(rho_bar, t) * density(t), lo, hi, rel_tol)?;
    let m2 = integrate(|t| log2_1p(rho_bar, t).powi(2) * density(t), lo, hi, rel_tol)?;
    let nt_f = nt as f64;
    Ok(GaussianBound {
        kind: BoundKind::Mrc,
        mean: nt_f * m1,
        variance: (nt_f * (m2 - m1 * m1)).max(0.0),
        nr,
        nt,
        l,
        rho_bar,
        threshold_u: (nr as f64 / l as f64).ln(),
    })
}
