use crate::channel::{row_norms_sq, ChannelMatrix};
use crate::error::Result;

use super::{check_selection_args, finish, SelectionResult};

/// Row indices ordered by descending squared norm, ties by ascending index.
pub(crate) fn rows_by_norm(h: &ChannelMatrix) -> (Vec<usize>, Vec<f64>) {
    let norms = row_norms_sq(h);
    let mut order: Vec<usize> = (0..h.nr()).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));
    (order, norms)
}

/// Keeps the `l` rows with the largest squared norms.
pub fn norm_select(h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<SelectionResult> {
    check_selection_args(h, l, rho_bar)?;
    let (order, _) = rows_by_norm(h);
    let mut chosen = order[..l].to_vec();
    chosen.sort_unstable();
    finish(h, chosen, rho_bar, h.nr() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::sample_channel;
    use crate::rng::derive_stream;
    use crate::selection::{exhaustive_select, greedy_select};

    #[test]
    fn keeps_largest_norms() {
        let h = ChannelMatrix::from_real_rows(&[vec![1.0], vec![2.0], vec![2f64.sqrt()]]).unwrap();
        let r = norm_select(&h, 2, 1.0).unwrap();
        assert_eq!(r.indices, vec![1, 2]);
        assert_eq!(r.visited_nodes, 3);
    }

    #[test]
    fn single_column_matches_exhaustive() {
        for seed in 0..20 {
            let h = sample_channel(&mut derive_stream(seed, 6), 9, 1).unwrap();
            let n = norm_select(&h, 3, 1.0).unwrap();
            let e = exhaustive_select(&h, 3, 1.0).unwrap();
            assert_eq!(n.indices, e.indices);
        }
    }

    #[test]
    fn greedy_usually_beats_norm() {
        let trials = 500;
        let mut wins = 0;
        for seed in 0..trials {
            let h = sample_channel(&mut derive_stream(seed, 32), 32, 4).unwrap();
            let n = norm_select(&h, 4, 3.0).unwrap();
            let g = greedy_select(&h, 4, 3.0).unwrap();
            if n.capacity_bits <= g.capacity_bits + 1e-12 {
                wins += 1;
            }
        }
        assert!(wins as f64 >= 0.95 * trials as f64, "greedy >= norm in {wins}/{trials}");
    }
}
