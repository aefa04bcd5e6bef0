use serde::{Deserialize, Serialize};

use super::bf::bf_bound_params;
use crate::capacity::linear_to_db;
use crate::error::{invalid, Result};

/// Empirical model of the gap between the BF bound mean and the exact
/// ergodic capacity:
///
/// ```text
/// a L^2 (L - 1) / nt^(b sqrt(L)) * { 1                                 snr_db >= 0
///                                  { e^{c(snr_db + d)} / (e^{c(snr_db + d)} + 1)   snr_db < 0
/// ```
///
/// The piecewise factor jumps at 0 dB (it is about 0.876 just below).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for GapModel {
    fn default() -> Self {
        Self {
            a: 0.1146,
            b: 0.4401,
            c: 0.2226,
            d: 8.78,
        }
    }
}

impl GapModel {
    pub fn eval(&self, l: usize, nt: usize, snr_db: f64) -> f64 {
        let lf = l as f64;
        let base = self.a * lf * lf * (lf - 1.0) / (nt as f64).powf(self.b * lf.sqrt());
        if snr_db >= 0.0 {
            base
        } else {
            let e = (self.c * (snr_db + self.d)).exp();
            base * e / (e + 1.0)
        }
    }
}

/// Gap with the default coefficients; `snr_db` is the normalized SNR in dB.
pub fn gap(l: usize, nt: usize, snr_db: f64) -> f64 {
    GapModel::default().eval(l, nt, snr_db)
}

/// BF bound mean minus the modeled gap. Only defined for `l <= nt`, the
/// regime the gap model covers.
pub fn approx_ergodic_capacity(nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<f64> {
    if l > nt {
        return invalid(format!("gap model covers l <= nt only (l={l}, nt={nt})"));
    }
    let bound = bf_bound_params(nr, nt, l, rho_bar)?;
    Ok(bound.mean - gap(l, nt, linear_to_db(rho_bar)))
}
