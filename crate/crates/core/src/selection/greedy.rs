use crate::channel::ChannelMatrix;
use crate::error::Result;
use crate::linalg::GramInverse;

use super::{check_selection_args, finish, tie_tolerance, SelectionResult};

/// Forward greedy selection.
///
/// Each step adds the row with the largest capacity increment
/// `log2(1 + rho_bar h B^{-1} h^H)`, `B = I + rho_bar * (Gram of chosen rows)`,
/// keeping `B^{-1}` current with rank-one updates. Ties go to the smaller
/// row index. Indices are returned in pick order.
pub fn greedy_select(h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<SelectionResult> {
    check_selection_args(h, l, rho_bar)?;
    let (chosen, visited) = greedy_core(h, l, rho_bar);
    finish(h, chosen, rho_bar, visited)
}

pub(crate) fn greedy_core(h: &ChannelMatrix, l: usize, rho_bar: f64) -> (Vec<usize>, u64) {
    let nr = h.nr();
    let mut inv = GramInverse::identity(h.nt(), rho_bar);
    let mut taken = vec![false; nr];
    let mut chosen = Vec::with_capacity(l);
    let mut visited = 0u64;
    for _ in 0..l {
        let mut best: Option<(usize, f64)> = None;
        for i in (0..nr).filter(|&i| !taken[i]) {
            visited += 1;
            let g = inv.gain(h.row(i));
            match best {
                Some((_, bg)) if g <= bg + tie_tolerance(bg) => {}
                _ => best = Some((i, g)),
            }
        }
        let (i, _) = best.expect("l <= nr leaves a candidate at every step");
        taken[i] = true;
        inv.add_row(h.row(i));
        chosen.push(i);
    }
    (chosen, visited)
}
