//! Draws of the exact (unapproximated) upper bounds.

use rand_distr::{Distribution, Exp1};

use crate::bounds::log2_1p;
use crate::rng::RngStream;

/// Which full-complexity bound to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FullBoundKind {
    /// `sum_{i<=nt} log2(1 + rho_bar alpha_i)`, `alpha_i ~ Gamma(nr, 1)`.
    PerTransmit,
    /// `sum_{i<=nr} log2(1 + rho_bar gamma_i)`, `gamma_i ~ Gamma(nt, 1)`.
    PerReceive,
}

/// Gamma(k, 1) for integer `k` as a sum of `k` unit exponentials.
pub fn sample_gamma_int(rng: &mut RngStream, k: usize) -> f64 {
    (0..k).map(|_| -> f64 { Exp1.sample(rng) }).sum()
}

pub fn sample_full_bound(rng: &mut RngStream, nr: usize, nt: usize, rho_bar: f64, kind: FullBoundKind) -> f64 {
    let (terms, shape) = match kind {
        FullBoundKind::PerTransmit => (nt, nr),
        FullBoundKind::PerReceive => (nr, nt),
    };
    (0..terms).map(|_| log2_1p(rho_bar, sample_gamma_int(rng, shape))).sum()
}

/// Moves the `l` largest values to the front of `xs` (unordered) and returns
/// that prefix.
pub(crate) fn top_l(xs: &mut [f64], l: usize) -> &mut [f64] {
    if l < xs.len() {
        xs.select_nth_unstable_by(l - 1, |a, b| b.total_cmp(a));
    }
    &mut xs[..l]
}

/// One draw of the exact BF bound: the `l` largest of `nr` Gamma(nt, 1)
/// gains, each through `log2(1 + rho_bar x)`.
pub fn sample_bf_bound(rng: &mut RngStream, nr: usize, nt: usize, l: usize, rho_bar: f64) -> f64 {
    assert!(l >= 1 && l <= nr, "need 1 <= l <= nr");
    let mut gains: Vec<f64> = (0..nr).map(|_| sample_gamma_int(rng, nt)).collect();
    top_l(&mut gains, l).iter().map(|&g| log2_1p(rho_bar, g)).sum()
}

/// Sum of the `l` largest of `nr` unit exponentials.
pub fn sample_trimmed_exp_sum(rng: &mut RngStream, nr: usize, l: usize) -> f64 {
    assert!(l >= 1 && l <= nr, "need 1 <= l <= nr");
    let mut xs: Vec<f64> = (0..nr).map(|_| Exp1.sample(rng)).collect();
    top_l(&mut xs, l).iter().sum()
}

/// One draw of the exact MRC bound: `nt` independent blocks, each combining
/// the `l` largest of `nr` unit exponentials.
pub fn sample_mrc_bound(rng: &mut RngStream, nr: usize, nt: usize, l: usize, rho_bar: f64) -> f64 {
    (0..nt)
        .map(|_| log2_1p(rho_bar, sample_trimmed_exp_sum(rng, nr, l)))
        .sum()
}
