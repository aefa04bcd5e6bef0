use crate::channel::ChannelMatrix;
use crate::error::{RasError, Result};
use crate::linalg::GramInverse;

use super::{check_selection_args, finish, tie_tolerance, SelectionResult};

/// Largest number of subsets `exhaustive_select` will enumerate.
pub const DEFAULT_ENUMERATION_GUARD: u128 = 10_000_000;

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Evaluates every `l`-subset and returns the best one. Ties go to the
/// lexicographically smallest index set.
pub fn exhaustive_select(h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<SelectionResult> {
    exhaustive_select_with_guard(h, l, rho_bar, DEFAULT_ENUMERATION_GUARD)
}

pub fn exhaustive_select_with_guard(
    h: &ChannelMatrix,
    l: usize,
    rho_bar: f64,
    guard: u128,
) -> Result<SelectionResult> {
    check_selection_args(h, l, rho_bar)?;
    let subsets = binomial(h.nr(), l);
    if subsets > guard {
        return Err(RasError::CapacityBudget {
            nr: h.nr(),
            l,
            subsets,
            guard,
        });
    }

    // Depth-first walk over combinations in lexicographic order. Sharing the
    // prefix Gram inverse makes every leaf cost one rank-one quadratic form.
    struct Walk<'a> {
        h: &'a ChannelMatrix,
        l: usize,
        path: Vec<usize>,
        best: f64,
        best_set: Vec<usize>,
    }

    impl Walk<'_> {
        fn visit(&mut self, start: usize, partial: f64, inv: &GramInverse) {
            let needed = self.l - self.path.len();
            let nr = self.h.nr();
            for i in start..=nr - needed {
                let row = self.h.row(i);
                let cap = partial + inv.gain(row);
                self.path.push(i);
                if needed == 1 {
                    // Lexicographic order: an earlier set wins any tie.
                    if cap > self.best + tie_tolerance(self.best) {
                        self.best = cap;
                        self.best_set.clone_from(&self.path);
                    }
                } else {
                    let mut child = inv.clone();
                    child.add_row(row);
                    self.visit(i + 1, cap, &child);
                }
                self.path.pop();
            }
        }
    }

    let mut walk = Walk {
        h,
        l,
        path: Vec::with_capacity(l),
        best: f64::NEG_INFINITY,
        best_set: Vec::new(),
    };
    walk.visit(0, 0.0, &GramInverse::identity(h.nt(), rho_bar));
    let visited = u64::try_from(subsets).unwrap_or(u64::MAX);
    finish(h, walk.best_set, rho_bar, visited)
}
