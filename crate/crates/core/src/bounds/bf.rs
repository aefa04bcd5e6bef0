use std::f64::consts::LN_2;

use super::chi2::{chi2_tail, chi2_tail_threshold};
use super::quadrature::integrate_tail;
use super::{check_dims, log2_1p, BoundKind, GaussianBound, BOUND_REL_TOL};
use crate::error::Result;

/// Gaussian approximation of the trimmed sum
/// `sum_{i<=l} log2(1 + rho_bar * gamma_(i))` over the `l` largest of `nr`
/// i.i.d. Gamma(nt, 1) gains.
///
/// With `g(x) = log2(1 + rho_bar x)`, `u` the tail threshold and `Q` the
/// chi-square upper tail, integration by parts gives
///
/// ```text
/// nr * int_u^inf g   f = nr * [ g(u)   Q(u) + rho_bar/ln2 * int_u^inf Q(x)        / (1 + rho_bar x) dx ]
/// nr * int_u^inf g^2 f = nr * [ g(u)^2 Q(u) + 2 rho_bar/ln2 * int_u^inf Q(x) g(x) / (1 + rho_bar x) dx ]
/// ```
///
/// The mean is the first line. The variance is
/// `l * (s2 + (g(u) - mean/l)^2 * (1 - l/nr))` with `s2` the variance of one
/// term conditioned on exceeding the threshold. The threshold enters the
/// variance through `g(u)`, on the same scale as the summed terms.
pub fn bf_bound_params(nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<GaussianBound> {
    bf_bound_params_with_tol(nr, nt, l, rho_bar, BOUND_REL_TOL)
}

pub fn bf_bound_params_with_tol(nr: usize, nt: usize, l: usize, rho_bar: f64, rel_tol: f64) -> Result<GaussianBound> {
    check_dims(nr, nt, l, rho_bar)?;
    let u = chi2_tail_threshold(nt, l, nr)?;
    let (nr_f, l_f) = (nr as f64, l as f64);
    let q_u = chi2_tail(nt, u);
    let g_u = log2_1p(rho_bar, u);

    let tail_1 = integrate_tail(|x| chi2_tail(nt, x) / (1.0 + rho_bar * x), u, rel_tol)?;
    let tail_2 = integrate_tail(
        |x| chi2_tail(nt, x) * log2_1p(rho_bar, x) / (1.0 + rho_bar * x),
        u,
        rel_tol,
    )?;

    let first = nr_f * (g_u * q_u + rho_bar / LN_2 * tail_1);
    let second = nr_f * (g_u * g_u * q_u + 2.0 * rho_bar / LN_2 * tail_2);

    let mean = first;
    let per_term = mean / l_f;
    let conditional_var = (second / l_f - per_term * per_term).max(0.0);
    let variance = l_f * (conditional_var + (g_u - per_term).powi(2) * (1.0 - l_f / nr_f));

    Ok(GaussianBound {
        kind: BoundKind::Bf,
        mean,
        variance: variance.max(0.0),
        nr,
        nt,
        l,
        rho_bar,
        threshold_u: u,
    })
}
