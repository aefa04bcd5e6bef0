//! Experiment orchestration.
//!
//! Trials are independent: trial `t` draws its channel, bound samples and
//! acquisition order from streams derived from `(master_seed, t)`. Trials may
//! run on the rayon pool or sequentially; per-trial values are collected in
//! trial order before any reduction, so both modes give bit-identical output.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{approx_ergodic_capacity, bound_params, BoundKind, GaussianBound};
use crate::capacity::{db_to_linear, efficient_capacity, EfficiencyParams};
use crate::channel::{row_subset, sample_channel};
use crate::error::{invalid, Result};
use crate::rng::{trial_stream, Purpose};
use crate::selection::{adaptive_select, AdaptiveConfig, RowOracle, SelectorKind};

use super::sampling::{sample_bf_bound, sample_mrc_bound};
use super::stats::{ks_distance, SummaryStats};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub trials: usize,
    pub nr: usize,
    pub nt: usize,
    pub l: usize,
    pub snr_db_grid: Vec<f64>,
    pub eta: f64,
    pub selector: SelectorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csi_grid: Option<Vec<usize>>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.nr == 0 || self.nt == 0 || self.l == 0 {
            return invalid("nr, nt and l must be positive");
        }
        if self.l > self.nr {
            return invalid(format!("l = {} exceeds nr = {}", self.l, self.nr));
        }
        if self.snr_db_grid.is_empty() {
            return invalid("SNR grid must not be empty");
        }
        if self.snr_db_grid.iter().any(|s| !s.is_finite()) {
            return invalid("SNR grid values must be finite");
        }
        EfficiencyParams::new(self.eta)?;
        if let Some(grid) = &self.csi_grid {
            if grid.is_empty() {
                return invalid("CSI grid must not be empty");
            }
            if let Some(&bad) = grid.iter().find(|&&u| u < self.l || u > self.nr) {
                return invalid(format!(
                    "CSI grid value {bad} outside [l, nr] = [{}, {}]",
                    self.l, self.nr
                ));
            }
        }
        Ok(())
    }

    /// The bound whose regime covers this configuration.
    pub fn bound_kind(&self) -> BoundKind {
        BoundKind::for_regime(self.nt, self.l)
    }

    fn efficiency(&self) -> EfficiencyParams {
        EfficiencyParams::new(self.eta).expect("validated")
    }
}

/// Runs `f` for every trial index and returns the results in trial order.
fn per_trial<T, F>(trials: usize, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..trials as u64).map(f).collect(),
        Execution::Parallel => (0..trials as u64).into_par_iter().map(f).collect(),
    }
}

fn sample_exact_bound(kind: BoundKind, seed: u64, trial: u64, nr: usize, nt: usize, l: usize, rho: f64) -> f64 {
    let mut rng = trial_stream(seed, trial, Purpose::BoundSample);
    match kind {
        BoundKind::Bf => sample_bf_bound(&mut rng, nr, nt, l, rho),
        BoundKind::Mrc => sample_mrc_bound(&mut rng, nr, nt, l, rho),
    }
}

/// Column `k` of a trials x points table.
fn column<T: Copy>(rows: &[Vec<T>], k: usize) -> Vec<T> {
    rows.iter().map(|r| r[k]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicPoint {
    pub snr_db: f64,
    pub rho_bar: f64,
    /// Capacity of the configured selector over the trials.
    pub selector: SummaryStats,
    pub visited_nodes: SummaryStats,
    /// Draws of the exact upper bound for the regime (BF for `l <= nt`, MRC otherwise).
    pub exact_bound: SummaryStats,
    pub bound: GaussianBound,
    /// Gap-corrected capacity, only for `l <= nt`.
    pub approx_capacity: Option<f64>,
}

/// Ergodic capacity of the selector against the exact and approximated
/// upper bounds, per SNR. The same channel draws are reused at every SNR.
pub fn run_ergodic(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<ErgodicPoint>> {
    cfg.validate()?;
    let kind = cfg.bound_kind();
    let rhos: Vec<f64> = cfg.snr_db_grid.iter().map(|&s| db_to_linear(s)).collect();

    let per = per_trial(cfg.trials, exec, |t| {
        let h = sample_channel(&mut trial_stream(cfg.master_seed, t, Purpose::Channel), cfg.nr, cfg.nt)?;
        rhos.iter()
            .map(|&rho| {
                let sel = cfg.selector.select(&h, cfg.l, rho)?;
                let bound = sample_exact_bound(kind, cfg.master_seed, t, cfg.nr, cfg.nt, cfg.l, rho);
                Ok((sel.capacity_bits, sel.visited_nodes as f64, bound))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    cfg.snr_db_grid
        .iter()
        .zip(&rhos)
        .enumerate()
        .map(|(k, (&snr_db, &rho_bar))| {
            let col = column(&per, k);
            let caps: Vec<f64> = col.iter().map(|c| c.0).collect();
            let visited: Vec<f64> = col.iter().map(|c| c.1).collect();
            let bounds: Vec<f64> = col.iter().map(|c| c.2).collect();
            Ok(ErgodicPoint {
                snr_db,
                rho_bar,
                selector: SummaryStats::from_samples(&caps)?,
                visited_nodes: SummaryStats::from_samples(&visited)?,
                exact_bound: SummaryStats::from_samples(&bounds)?,
                bound: bound_params(kind, cfg.nr, cfg.nt, cfg.l, rho_bar)?,
                approx_capacity: if cfg.l <= cfg.nt {
                    Some(approx_ergodic_capacity(cfg.nr, cfg.nt, cfg.l, rho_bar)?)
                } else {
                    None
                },
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfPoint {
    pub snr_db: f64,
    pub bound: GaussianBound,
    pub samples: SummaryStats,
    pub ks: f64,
}

/// Empirical distribution of the exact bound next to its Gaussian
/// approximation, per SNR.
pub fn run_cdf(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<CdfPoint>> {
    cfg.validate()?;
    let kind = cfg.bound_kind();
    cfg.snr_db_grid
        .iter()
        .map(|&snr_db| {
            let rho = db_to_linear(snr_db);
            let draws = per_trial(cfg.trials, exec, |t| {
                Ok(sample_exact_bound(kind, cfg.master_seed, t, cfg.nr, cfg.nt, cfg.l, rho))
            })?;
            let bound = bound_params(kind, cfg.nr, cfg.nt, cfg.l, rho)?;
            let samples = SummaryStats::from_samples(&draws)?;
            let ks = ks_distance(&samples.ecdf, bound.mean, bound.variance)?;
            Ok(CdfPoint {
                snr_db,
                bound,
                samples,
                ks,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheckPoint {
    pub snr_db: f64,
    pub bound: GaussianBound,
    /// Monte-Carlo draws of the exact bound.
    pub exact: SummaryStats,
}

/// Approximated bound parameters next to Monte-Carlo moments of the exact
/// bound, per SNR.
pub fn run_bound_check(cfg: &ExperimentConfig, kind: BoundKind, exec: Execution) -> Result<Vec<BoundCheckPoint>> {
    cfg.validate()?;
    cfg.snr_db_grid
        .iter()
        .map(|&snr_db| {
            let rho = db_to_linear(snr_db);
            let draws = per_trial(cfg.trials, exec, |t| {
                Ok(sample_exact_bound(kind, cfg.master_seed, t, cfg.nr, cfg.nt, cfg.l, rho))
            })?;
            Ok(BoundCheckPoint {
                snr_db,
                bound: bound_params(kind, cfg.nr, cfg.nt, cfg.l, rho)?,
                exact: SummaryStats::from_samples(&draws)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub csi_rows: usize,
    pub mean_capacity: f64,
    pub std_error: f64,
    pub mean_efficient: f64,
    /// Mean capacity over the mean full-CSI capacity.
    pub r1: f64,
    /// `csi_rows / nr`.
    pub r2: f64,
    /// Approximated bound mean treating the acquired rows as the whole array.
    pub bound_mean: f64,
    /// Gap-corrected capacity for the acquired rows, only for `l <= nt`.
    pub approx_capacity: Option<f64>,
}

/// Partial-CSI sweep: each trial acquires rows in a random order and the
/// selector runs on the first `csi_rows` of them, for every grid value.
pub fn sweep_csi(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let Some(grid) = cfg.csi_grid.as_ref() else {
        return invalid("sweep needs a CSI grid");
    };
    let rhos: Vec<f64> = cfg.snr_db_grid.iter().map(|&s| db_to_linear(s)).collect();
    let eff = cfg.efficiency();

    // Per trial: for every SNR, the full-CSI capacity followed by one
    // capacity per grid value.
    let per = per_trial(cfg.trials, exec, |t| {
        let h = sample_channel(&mut trial_stream(cfg.master_seed, t, Purpose::Channel), cfg.nr, cfg.nt)?;
        let oracle = RowOracle::shuffled(&h, &mut trial_stream(cfg.master_seed, t, Purpose::AcquisitionOrder));
        let mut order = oracle.clone();
        let permuted = row_subset(&h, order.acquire(cfg.nr))?;
        let mut out = Vec::with_capacity(rhos.len() * (grid.len() + 1));
        for &rho in &rhos {
            out.push(cfg.selector.select(&permuted, cfg.l, rho)?.capacity_bits);
            for &rows in grid {
                let prefix: Vec<usize> = (0..rows).collect();
                let sub = row_subset(&permuted, &prefix)?;
                out.push(cfg.selector.select(&sub, cfg.l, rho)?.capacity_bits);
            }
        }
        Ok(out)
    })?;

    let width = grid.len() + 1;
    let mut rows = Vec::with_capacity(rhos.len() * grid.len());
    for (s, (&snr_db, &rho)) in cfg.snr_db_grid.iter().zip(&rhos).enumerate() {
        let full = SummaryStats::from_samples(&column(&per, s * width))?;
        for (g, &csi_rows) in grid.iter().enumerate() {
            let caps = column(&per, s * width + 1 + g);
            let stats = SummaryStats::from_samples(&caps)?;
            let effs = caps
                .iter()
                .map(|&c| efficient_capacity(c, csi_rows, cfg.l, eff))
                .collect::<Result<Vec<_>>>()?;
            let mean_efficient = effs.iter().sum::<f64>() / effs.len() as f64;
            let kind = cfg.bound_kind();
            rows.push(SweepRow {
                snr_db,
                csi_rows,
                mean_capacity: stats.mean,
                std_error: stats.std_error,
                mean_efficient,
                r1: if full.mean > 0.0 { stats.mean / full.mean } else { 0.0 },
                r2: csi_rows as f64 / cfg.nr as f64,
                bound_mean: bound_params(kind, csi_rows, cfg.nt, cfg.l, rho)?.mean,
                approx_capacity: if cfg.l <= cfg.nt {
                    Some(approx_ergodic_capacity(csi_rows, cfg.nt, cfg.l, rho)?)
                } else {
                    None
                },
            });
        }
    }
    Ok(rows)
}

/// How the adaptive loop's target capacity is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetRule {
    /// `0.9 x` the gap-corrected capacity when `l <= nt`; `0.85 x` the MRC
    /// bound mean when `l > nt`.
    Level09,
    Value(f64),
}

impl TargetRule {
    pub fn resolve(self, nr: usize, nt: usize, l: usize, rho_bar: f64) -> Result<f64> {
        match self {
            TargetRule::Value(v) => Ok(v),
            TargetRule::Level09 if l <= nt => Ok(0.9 * approx_ergodic_capacity(nr, nt, l, rho_bar)?),
            TargetRule::Level09 => Ok(0.85 * bound_params(BoundKind::Mrc, nr, nt, l, rho_bar)?.mean),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdaptivePoint {
    pub snr_db: f64,
    pub target: f64,
    pub capacity: SummaryStats,
    pub csi_rows: SummaryStats,
    pub visited_nodes: SummaryStats,
    pub reached_rate: f64,
    pub mean_efficient: f64,
    /// The same selector run on the full channel.
    pub full_capacity: SummaryStats,
    pub full_visited_nodes: SummaryStats,
    pub full_mean_efficient: f64,
}

/// Adaptive partial-CSI selection against full-CSI selection with the same
/// selector, per SNR. `batch_size = None` picks `l` for optimal selectors
/// and 4 otherwise.
pub fn run_adaptive(
    cfg: &ExperimentConfig,
    target: TargetRule,
    batch_size: Option<usize>,
    exec: Execution,
) -> Result<Vec<AdaptivePoint>> {
    cfg.validate()?;
    let eff = cfg.efficiency();
    let batch = batch_size.unwrap_or(if cfg.selector.is_optimal() { cfg.l } else { 4 });
    cfg.snr_db_grid
        .iter()
        .map(|&snr_db| {
            let rho = db_to_linear(snr_db);
            let goal = target.resolve(cfg.nr, cfg.nt, cfg.l, rho)?;
            let acfg = AdaptiveConfig {
                target_capacity: goal,
                batch_size: batch,
                inner_selector: cfg.selector,
                l: cfg.l,
                rho_bar: rho,
            };
            acfg.validate()?;
            let per = per_trial(cfg.trials, exec, |t| {
                let h = sample_channel(&mut trial_stream(cfg.master_seed, t, Purpose::Channel), cfg.nr, cfg.nt)?;
                let mut oracle =
                    RowOracle::shuffled(&h, &mut trial_stream(cfg.master_seed, t, Purpose::AcquisitionOrder));
                let out = adaptive_select(&mut oracle, &acfg)?;
                let full = cfg.selector.select(&h, cfg.l, rho)?;
                Ok((out, full))
            })?;
            let cap: Vec<f64> = per.iter().map(|p| p.0.capacity_bits).collect();
            let csi: Vec<f64> = per.iter().map(|p| p.0.csi_rows_used as f64).collect();
            let visited: Vec<f64> = per.iter().map(|p| p.0.visited_nodes as f64).collect();
            let full_cap: Vec<f64> = per.iter().map(|p| p.1.capacity_bits).collect();
            let full_visited: Vec<f64> = per.iter().map(|p| p.1.visited_nodes as f64).collect();
            let n = per.len() as f64;
            let reached = per.iter().filter(|p| p.0.reached).count() as f64 / n;
            let mut eff_sum = 0.0;
            let mut full_eff_sum = 0.0;
            for p in &per {
                eff_sum += efficient_capacity(p.0.capacity_bits, p.0.csi_rows_used, cfg.l, eff)?;
                full_eff_sum += efficient_capacity(p.1.capacity_bits, cfg.nr, cfg.l, eff)?;
            }
            Ok(AdaptivePoint {
                snr_db,
                target: goal,
                capacity: SummaryStats::from_samples(&cap)?,
                csi_rows: SummaryStats::from_samples(&csi)?,
                visited_nodes: SummaryStats::from_samples(&visited)?,
                reached_rate: reached,
                mean_efficient: eff_sum / n,
                full_capacity: SummaryStats::from_samples(&full_cap)?,
                full_visited_nodes: SummaryStats::from_samples(&full_visited)?,
                full_mean_efficient: full_eff_sum / n,
            })
        })
        .collect()
}
