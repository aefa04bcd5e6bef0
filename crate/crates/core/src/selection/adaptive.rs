//! Adaptive selection with partial CSI.
//!
//! Rows of the channel matrix are acquired in batches. After each batch the
//! inner selector runs on every row acquired so far, and acquisition stops
//! as soon as the selected subset reaches the target capacity or every row
//! has been acquired.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::channel::{row_subset, ChannelMatrix};
use crate::error::{invalid, Result};
use crate::rng::RngStream;

use super::SelectorKind;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveConfig {
    pub target_capacity: f64,
    /// Rows acquired per step.
    pub batch_size: usize,
    pub inner_selector: SelectorKind,
    pub l: usize,
    pub rho_bar: f64,
}

impl AdaptiveConfig {
    /// Optimal inner selection (branch-and-bound), one batch of `l` rows per
    /// step. Intended for `l <= nt`.
    pub fn optimal(target_capacity: f64, l: usize, rho_bar: f64) -> Self {
        Self {
            target_capacity,
            batch_size: l,
            inner_selector: SelectorKind::Bab,
            l,
            rho_bar,
        }
    }

    /// Greedy inner selection, four rows per step. Intended for `l > nt`.
    pub fn greedy(target_capacity: f64, l: usize, rho_bar: f64) -> Self {
        Self {
            target_capacity,
            batch_size: 4,
            inner_selector: SelectorKind::Greedy,
            l,
            rho_bar,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return invalid("batch size must be at least 1");
        }
        if !(self.target_capacity > 0.0) {
            return invalid(format!("target capacity must be positive, got {}", self.target_capacity));
        }
        if self.l == 0 {
            return invalid("l must be at least 1");
        }
        if !(self.rho_bar > 0.0) {
            return invalid(format!("rho_bar must be positive, got {}", self.rho_bar));
        }
        // Rows are acquired through the RF chains, at most l at a time.
        if self.inner_selector.is_optimal() && self.batch_size > self.l {
            return invalid(format!(
                "batch size {} exceeds the {} RF chains available to an optimal inner selector",
                self.batch_size, self.l
            ));
        }
        Ok(())
    }
}

/// Hands out rows of a channel matrix one batch at a time, in a fixed order,
/// never repeating a row.
#[derive(Clone, Debug)]
pub struct RowOracle<'a> {
    h: &'a ChannelMatrix,
    order: Vec<usize>,
    next: usize,
}

impl<'a> RowOracle<'a> {
    /// Acquires rows in the given order, which must be a permutation of `0..nr`.
    pub fn with_order(h: &'a ChannelMatrix, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; h.nr()];
        if order.len() != h.nr() {
            return invalid("acquisition order must list every row exactly once");
        }
        for &i in &order {
            if i >= h.nr() || std::mem::replace(&mut seen[i], true) {
                return invalid("acquisition order must list every row exactly once");
            }
        }
        Ok(Self { h, order, next: 0 })
    }

    /// Acquires rows in a uniformly random order drawn from `rng`.
    pub fn shuffled(h: &'a ChannelMatrix, rng: &mut RngStream) -> Self {
        let mut order: Vec<usize> = (0..h.nr()).collect();
        order.shuffle(rng);
        Self { h, order, next: 0 }
    }

    pub fn channel(&self) -> &'a ChannelMatrix {
        self.h
    }

    pub fn acquired(&self) -> &[usize] {
        &self.order[..self.next]
    }

    pub fn remaining(&self) -> usize {
        self.order.len() - self.next
    }

    /// Acquires up to `count` new rows and returns their indices.
    pub fn acquire(&mut self, count: usize) -> &[usize] {
        let start = self.next;
        self.next = (self.next + count).min(self.order.len());
        &self.order[start..self.next]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveStep {
    pub step: usize,
    pub acquired: usize,
    pub capacity_bits: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveOutcome {
    /// Rows acquired when the loop stopped.
    pub csi_rows_used: usize,
    /// Final subset in original row indices; empty if fewer than `l` rows
    /// were ever acquired.
    pub indices: Vec<usize>,
    pub capacity_bits: f64,
    pub trace: Vec<AdaptiveStep>,
    pub reached: bool,
    /// Sum of the inner selectors' visited nodes over all steps.
    pub visited_nodes: u64,
}

/// Runs the acquire-then-select loop until `cfg.target_capacity` is met or
/// the oracle runs dry. Steps that have not yet gathered `l` rows skip
/// selection and record zero capacity.
pub fn adaptive_select(oracle: &mut RowOracle<'_>, cfg: &AdaptiveConfig) -> Result<AdaptiveOutcome> {
    cfg.validate()?;
    let h = oracle.channel();
    if cfg.l > h.nr() {
        return invalid(format!("l = {} exceeds the {} available rows", cfg.l, h.nr()));
    }

    let mut capacity_bits = 0.0;
    let mut indices = Vec::new();
    let mut trace = Vec::new();
    let mut visited_nodes = 0u64;
    let mut step = 0;

    while capacity_bits < cfg.target_capacity && oracle.remaining() > 0 {
        step += 1;
        oracle.acquire(cfg.batch_size);
        let acquired = oracle.acquired();
        if acquired.len() >= cfg.l {
            let sub = row_subset(h, acquired)?;
            let result = cfg.inner_selector.select(&sub, cfg.l, cfg.rho_bar)?;
            visited_nodes += result.visited_nodes;
            // The candidate set only grows, so the optimum cannot drop; a
            // heuristic inner selector might, in which case keep the old pick.
            if result.capacity_bits >= capacity_bits {
                capacity_bits = result.capacity_bits;
                indices = result.indices.iter().map(|&k| acquired[k]).collect();
            }
        }
        trace.push(AdaptiveStep {
            step,
            acquired: acquired.len(),
            capacity_bits,
        });
    }

    Ok(AdaptiveOutcome {
        csi_rows_used: oracle.acquired().len(),
        indices,
        capacity_bits,
        trace,
        reached: capacity_bits >= cfg.target_capacity,
        visited_nodes,
    })
}
