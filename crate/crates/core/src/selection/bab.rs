//! Depth-first branch-and-bound over index-ordered partial subsets.
//!
//! Rows are visited in descending-norm order. A node holds a partial subset,
//! its exact capacity and the inverse of `B = I + rho_bar * Gram(partial)`.
//! By Hadamard's inequality each further row adds at most
//! `log2(1 + rho_bar ||h_j||^2)`, so a node with `k` rows is worth at most its
//! partial capacity plus the `l - k` largest such terms among the rows after
//! it. With rows sorted by norm those are simply the next `l - k` rows.

use crate::channel::ChannelMatrix;
use crate::error::Result;
use crate::linalg::GramInverse;

use super::greedy::greedy_core;
use super::norm::rows_by_norm;
use super::{check_selection_args, finish, improves, tie_tolerance, SelectionResult};

/// Exact subset selection. Returns the same subset as
/// [`exhaustive_select`](super::exhaustive_select), including its tie-break.
///
/// `visited_nodes` counts the complete subsets whose capacity is evaluated,
/// whether or not they beat the incumbent; a forced completion counts as one.
/// This is the unit exhaustive search uses, so it never exceeds `C(nr, l)`.
/// The greedy warm start is not counted.
pub fn bab_select(h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<SelectionResult> {
    check_selection_args(h, l, rho_bar)?;
    let nr = h.nr();
    if l == nr {
        return finish(h, (0..nr).collect(), rho_bar, 1);
    }

    let (order, norms) = rows_by_norm(h);
    // prefix[k] = sum of the per-row bounds of the first k rows in search order.
    let mut prefix = Vec::with_capacity(nr + 1);
    prefix.push(0.0);
    for &r in &order {
        prefix.push(prefix[prefix.len() - 1] + (rho_bar * norms[r]).ln_1p() / std::f64::consts::LN_2);
    }
    let (mut incumbent, _) = greedy_core(h, l, rho_bar);
    incumbent.sort_unstable();
    let best = crate::capacity::capacity(&crate::channel::row_subset(h, &incumbent)?, rho_bar)?;

    let mut search = Search {
        h,
        order: &order,
        prefix: &prefix,
        l,
        path: Vec::with_capacity(l),
        best,
        best_set: incumbent,
        visited: 0,
    };
    search.expand(0, 0.0, &GramInverse::identity(h.nt(), rho_bar));
    let Search { best_set, visited, .. } = search;
    finish(h, best_set, rho_bar, visited)
}

struct Search<'a> {
    h: &'a ChannelMatrix,
    order: &'a [usize],
    prefix: &'a [f64],
    l: usize,
    /// Original row indices of the current partial subset.
    path: Vec<usize>,
    best: f64,
    best_set: Vec<usize>,
    visited: u64,
}

impl Search<'_> {
    fn consider(&mut self, cap: f64) {
        let mut set = self.path.clone();
        set.sort_unstable();
        if improves(cap, &set, self.best, &self.best_set) {
            self.best = cap;
            self.best_set = set;
        }
    }

    /// Expands the node whose next candidate position is `start`.
    fn expand(&mut self, start: usize, partial: f64, inv: &GramInverse) {
        let n = self.order.len();
        let needed = self.l - self.path.len();

        if n - start == needed {
            // Forced completion: the only subset left takes every remaining row.
            let mut inv = inv.clone();
            let mut cap = partial;
            for &r in &self.order[start..] {
                let row = self.h.row(r);
                cap += inv.gain(row);
                inv.add_row(row);
            }
            self.visited += 1;
            let depth = self.path.len();
            self.path.extend_from_slice(&self.order[start..]);
            self.consider(cap);
            self.path.truncate(depth);
            return;
        }

        for pos in start..=n - needed {
            let row_index = self.order[pos];
            let g = inv.gain(self.h.row(row_index));
            let bound = partial + g + self.prefix[pos + needed] - self.prefix[pos + 1];
            if needed == 1 {
                self.visited += 1;
            }
            if bound < self.best - tie_tolerance(self.best) {
                continue;
            }
            self.path.push(row_index);
            if needed == 1 {
                self.consider(partial + g);
            } else {
                let mut child = inv.clone();
                child.add_row(self.h.row(row_index));
                self.expand(pos + 1, partial + g, &child);
            }
            self.path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_channel;
    use crate::rng::derive_stream;
    use crate::selection::{binomial, exhaustive_select};

    #[test]
    fn agrees_with_exhaustive() {
        let mut case = 0u64;
        for nr in [4usize, 7, 10, 12] {
            for nt in 1..=4usize {
                for l in 1..=4usize.min(nr) {
                    for rho in [0.3, 3.0, 30.0] {
                        case += 1;
                        let h = sample_channel(&mut derive_stream(case, 77), nr, nt).unwrap();
                        let b = bab_select(&h, l, rho).unwrap();
                        let e = exhaustive_select(&h, l, rho).unwrap();
                        assert!((b.capacity_bits - e.capacity_bits).abs() < 1e-9, "case {case}");
                        assert_eq!(b.indices, e.indices, "case {case}");
                        assert!(b.visited_nodes as u128 <= binomial(nr, l));
                    }
                }
            }
        }
    }

    #[test]
    fn forced_completion_is_one_node() {
        let h = sample_channel(&mut derive_stream(3, 3), 6, 2).unwrap();
        let r = bab_select(&h, 6, 1.0).unwrap();
        assert_eq!(r.indices, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(r.visited_nodes, 1);
    }

    #[test]
    fn scalar_channel_takes_largest() {
        let h = ChannelMatrix::from_real_rows(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let r = bab_select(&h, 2, 1.0).unwrap();
        assert_eq!(r.indices, vec![1, 2]);
    }

    #[test]
    fn ties_follow_exhaustive() {
        let h = ChannelMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        let b = bab_select(&h, 2, 1.0).unwrap();
        let e = exhaustive_select(&h, 2, 1.0).unwrap();
        assert_eq!(e.indices, vec![0, 1]);
        assert_eq!(b.indices, e.indices);
    }
}
