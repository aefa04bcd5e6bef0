//! Receive antenna subset selection.
//!
//! Every selector picks `l` rows of the channel matrix maximizing (exactly or
//! heuristically) `log2 det(I + rho_bar H_T H_T^H)`, and reports how many
//! search nodes it visited so that algorithms can be compared on complexity.

mod adaptive;
mod bab;
mod exhaustive;
mod greedy;
mod norm;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use adaptive::{adaptive_select, AdaptiveConfig, AdaptiveOutcome, AdaptiveStep, RowOracle};
pub use bab::bab_select;
pub use exhaustive::{binomial, exhaustive_select, exhaustive_select_with_guard, DEFAULT_ENUMERATION_GUARD};
pub use greedy::greedy_select;
pub use norm::norm_select;

use crate::capacity::capacity;
use crate::channel::{row_subset, ChannelMatrix};
use crate::error::{invalid, RasError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    /// Selected row indices. Exhaustive, branch-and-bound and norm selection
    /// report them ascending; greedy reports them in pick order.
    pub indices: Vec<usize>,
    pub capacity_bits: f64,
    pub visited_nodes: u64,
    /// Number of channel rows the selector had to know.
    pub csi_rows_used: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectorKind {
    #[serde(rename = "es")]
    Exhaustive,
    Greedy,
    Bab,
    Norm,
}

impl SelectorKind {
    pub fn is_optimal(self) -> bool {
        matches!(self, SelectorKind::Exhaustive | SelectorKind::Bab)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SelectorKind::Exhaustive => "es",
            SelectorKind::Greedy => "greedy",
            SelectorKind::Bab => "bab",
            SelectorKind::Norm => "norm",
        }
    }

    pub fn select(self, h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<SelectionResult> {
        match self {
            SelectorKind::Exhaustive => exhaustive_select(h, l, rho_bar),
            SelectorKind::Greedy => greedy_select(h, l, rho_bar),
            SelectorKind::Bab => bab_select(h, l, rho_bar),
            SelectorKind::Norm => norm_select(h, l, rho_bar),
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectorKind {
    type Err = RasError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "es" | "exhaustive" => Ok(SelectorKind::Exhaustive),
            "greedy" => Ok(SelectorKind::Greedy),
            "bab" => Ok(SelectorKind::Bab),
            "norm" => Ok(SelectorKind::Norm),
            other => invalid(format!("unknown selector '{other}' (expected es, greedy, bab or norm)")),
        }
    }
}

pub(crate) fn check_selection_args(h: &ChannelMatrix, l: usize, rho_bar: f64) -> Result<()> {
    if l == 0 {
        return invalid("l must be at least 1");
    }
    if l > h.nr() {
        return invalid(format!("l = {l} exceeds the {} available rows", h.nr()));
    }
    if !(rho_bar > 0.0) || !rho_bar.is_finite() {
        return invalid(format!("rho_bar must be positive, got {rho_bar}"));
    }
    Ok(())
}

/// Absolute slack under which two capacities count as tied.
pub(crate) fn tie_tolerance(c: f64) -> f64 {
    if c.is_finite() {
        1e-10 * c.abs().max(1.0)
    } else {
        0.0
    }
}

/// Whether `(cap, set)` should replace the incumbent `(best, best_set)`:
/// strictly larger capacity, or a tie with a lexicographically smaller set.
/// Both sets must be sorted ascending.
pub(crate) fn improves(cap: f64, set: &[usize], best: f64, best_set: &[usize]) -> bool {
    let tol = tie_tolerance(best);
    if cap > best + tol {
        return true;
    }
    cap >= best - tol && set < best_set
}

/// Final result with the capacity recomputed from scratch on the chosen rows.
pub(crate) fn finish(h: &ChannelMatrix, indices: Vec<usize>, rho_bar: f64, visited_nodes: u64) -> Result<SelectionResult> {
    let capacity_bits = capacity(&row_subset(h, &indices)?, rho_bar)?;
    Ok(SelectionResult {
        indices,
        capacity_bits,
        visited_nodes,
        csi_rows_used: h.nr(),
    })
}
