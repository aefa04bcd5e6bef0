//! Chi-square variables with `2k` degrees of freedom, normalized to mean `k`
//! (that is, Gamma(k, 1)).

use crate::error::{invalid, Result};

/// Density `e^{-x} x^{k-1} / (k-1)!` for `x >= 0`, zero otherwise.
pub fn chi2_pdf(nt: usize, x: f64) -> f64 {
    assert!(nt >= 1, "shape must be positive");
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return if nt == 1 { 1.0 } else { 0.0 };
    }
    let k = nt as f64;
    ((k - 1.0) * x.ln() - x - ln_factorial(nt - 1)).exp()
}

/// Upper tail `Q(k, x) = e^{-x} sum_{j<k} x^j / j!`.
pub fn chi2_tail(nt: usize, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..nt {
        term *= x / j as f64;
        sum += term;
    }
    // Fold e^{-x} in through logs so large x cannot overflow the partial sum.
    (sum.ln() - x).exp()
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Threshold `u >= 0` with `Q(nt, u) = l / nr`: the point above which the
/// top `l` of `nr` samples fall, asymptotically.
///
/// Closed form `ln(nr / l)` for `nt = 1`, bisection to `1e-10` otherwise.
pub fn chi2_tail_threshold(nt: usize, l: usize, nr: usize) -> Result<f64> {
    if nt == 0 || l == 0 || nr == 0 {
        return invalid("nt, l and nr must be positive");
    }
    if l > nr {
        return invalid(format!("l = {l} exceeds nr = {nr}"));
    }
    if l == nr {
        return Ok(0.0);
    }
    let p = l as f64 / nr as f64;
    if nt == 1 {
        return Ok((nr as f64 / l as f64).ln());
    }
    let k = nt as f64;
    let mut lo = 0.0;
    let mut hi = k + 40.0 + 10.0 * k.sqrt();
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if chi2_tail(nt, mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
