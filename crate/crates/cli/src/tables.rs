//! One CSV schema per experiment kind. Each table takes a list of blocks so a
//! figure recipe with several panels emits a single file; every block's
//! resolved config goes into the `#` header lines.

use ras_core::bounds::{bound_params, BoundKind};
use ras_core::montecarlo::{
    run_adaptive, run_bound_check, run_cdf, run_ergodic, sweep_csi, normal_cdf, TargetRule,
};
use ras_core::rng::{trial_stream, Purpose};
use ras_core::{db_to_linear, sample_channel, Execution, ExperimentConfig, SelectorKind};
use serde::Serialize;

use crate::error::CliResult;
use crate::output::{fmt_f64, fmt_opt, Table};

/// Number of abscissae per block in the CDF table.
pub const CDF_POINTS: usize = 101;

fn f(x: f64) -> String {
    fmt_f64(x)
}

fn block_meta<T: Serialize>(t: &mut Table, blocks: &[T]) -> CliResult<()> {
    for (i, b) in blocks.iter().enumerate() {
        let prefix = if blocks.len() == 1 { String::new() } else { format!("block{i}.") };
        t.meta_struct(&prefix, b)?;
    }
    Ok(())
}

fn grid_meta(t: &mut Table, nr: usize, nt: usize, l: usize, snr_db: &[f64]) {
    t.meta("nr", nr);
    t.meta("nt", nt);
    t.meta("l", l);
    let grid: Vec<String> = snr_db.iter().map(|&s| f(s)).collect();
    t.meta("snr_db_grid", format!("[{}]", grid.join(",")));
}

pub fn bound_table(kind: BoundKind, nr: usize, nt: usize, l: usize, snr_db: &[f64]) -> CliResult<Table> {
    let mut t = Table::new(&["nr", "nt", "l", "snr_db", "u", "mu", "var"]);
    t.meta("bound", kind);
    grid_meta(&mut t, nr, nt, l, snr_db);
    for &s in snr_db {
        let b = bound_params(kind, nr, nt, l, db_to_linear(s))?;
        t.push(vec![nr.to_string(), nt.to_string(), l.to_string(), f(s), f(b.threshold_u), f(b.mean), f(b.variance)]);
    }
    Ok(t)
}

/// Selection on the channel drawn for trial 0 of `seed`.
pub fn select_table(selector: SelectorKind, seed: u64, nr: usize, nt: usize, l: usize, snr_db: &[f64]) -> CliResult<Table> {
    let mut t = Table::new(&[
        "algo",
        "nr",
        "nt",
        "l",
        "snr_db",
        "indices",
        "capacity",
        "visited_nodes",
        "csi_rows_used",
    ]);
    t.meta("algo", selector);
    t.meta("seed", seed);
    grid_meta(&mut t, nr, nt, l, snr_db);
    let h = sample_channel(&mut trial_stream(seed, 0, Purpose::Channel), nr, nt)?;
    for &s in snr_db {
        let r = selector.select(&h, l, db_to_linear(s))?;
        let indices: Vec<String> = r.indices.iter().map(ToString::to_string).collect();
        t.push(vec![
            selector.to_string(),
            nr.to_string(),
            nt.to_string(),
            l.to_string(),
            f(s),
            indices.join(" "),
            f(r.capacity_bits),
            r.visited_nodes.to_string(),
            r.csi_rows_used.to_string(),
        ]);
    }
    Ok(t)
}

pub fn ergodic_table(blocks: &[ExperimentConfig], exec: Execution) -> CliResult<Table> {
    let mut t = Table::new(&[
        "nr",
        "nt",
        "l",
        "snr_db",
        "selector",
        "capacity_mean",
        "capacity_se",
        "visited_mean",
        "exact_bound_mean",
        "exact_bound_se",
        "bound",
        "bound_mean",
        "bound_var",
        "approx_capacity",
    ]);
    block_meta(&mut t, blocks)?;
    for cfg in blocks {
        for p in run_ergodic(cfg, exec)? {
            t.push(vec![
                cfg.nr.to_string(),
                cfg.nt.to_string(),
                cfg.l.to_string(),
                f(p.snr_db),
                cfg.selector.to_string(),
                f(p.selector.mean),
                f(p.selector.std_error),
                f(p.visited_nodes.mean),
                f(p.exact_bound.mean),
                f(p.exact_bound.std_error),
                p.bound.kind.to_string(),
                f(p.bound.mean),
                f(p.bound.variance),
                fmt_opt(p.approx_capacity),
            ]);
        }
    }
    Ok(t)
}

/// Empirical and Gaussian CDFs on an even grid spanning the samples.
pub fn cdf_table(blocks: &[ExperimentConfig], exec: Execution) -> CliResult<Table> {
    let mut t = Table::new(&[
        "nr",
        "nt",
        "l",
        "snr_db",
        "bound",
        "x",
        "empirical_cdf",
        "gaussian_cdf",
        "ks",
    ]);
    block_meta(&mut t, blocks)?;
    for cfg in blocks {
        for p in run_cdf(cfg, exec)? {
            let values = &p.samples.ecdf.values;
            let (lo, hi) = (values[0], values[values.len() - 1]);
            for k in 0..CDF_POINTS {
                let x = lo + (hi - lo) * k as f64 / (CDF_POINTS - 1) as f64;
                let below = values.partition_point(|&v| v <= x);
                t.push(vec![
                    cfg.nr.to_string(),
                    cfg.nt.to_string(),
                    cfg.l.to_string(),
                    f(p.snr_db),
                    p.bound.kind.to_string(),
                    f(x),
                    f(below as f64 / values.len() as f64),
                    f(normal_cdf(x, p.bound.mean, p.bound.variance)),
                    f(p.ks),
                ]);
            }
        }
    }
    Ok(t)
}

/// Approximated bound moments next to Monte-Carlo moments of the exact bound.
pub fn bound_check_table(blocks: &[ExperimentConfig], exec: Execution) -> CliResult<Table> {
    let mut t = Table::new(&[
        "bound", "nr", "nt", "l", "snr_db", "u", "mu", "var", "mc_mean", "mc_var", "mc_se",
    ]);
    block_meta(&mut t, blocks)?;
    for cfg in blocks {
        for p in run_bound_check(cfg, cfg.bound_kind(), exec)? {
            t.push(vec![
                p.bound.kind.to_string(),
                cfg.nr.to_string(),
                cfg.nt.to_string(),
                cfg.l.to_string(),
                f(p.snr_db),
                f(p.bound.threshold_u),
                f(p.bound.mean),
                f(p.bound.variance),
                f(p.exact.mean),
                f(p.exact.variance),
                f(p.exact.std_error),
            ]);
        }
    }
    Ok(t)
}

pub fn sweep_table(blocks: &[ExperimentConfig], exec: Execution) -> CliResult<Table> {
    let mut t = Table::new(&[
        "nr",
        "nt",
        "l",
        "snr_db",
        "selector",
        "csi_rows",
        "capacity_mean",
        "capacity_se",
        "efficient_mean",
        "r1",
        "r2",
        "bound_mean",
        "approx_capacity",
    ]);
    block_meta(&mut t, blocks)?;
    for cfg in blocks {
        for r in sweep_csi(cfg, exec)? {
            t.push(vec![
                cfg.nr.to_string(),
                cfg.nt.to_string(),
                cfg.l.to_string(),
                f(r.snr_db),
                cfg.selector.to_string(),
                r.csi_rows.to_string(),
                f(r.mean_capacity),
                f(r.std_error),
                f(r.mean_efficient),
                f(r.r1),
                f(r.r2),
                f(r.bound_mean),
                fmt_opt(r.approx_capacity),
            ]);
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdaptiveJob {
    #[serde(flatten)]
    pub cfg: ExperimentConfig,
    pub target: TargetRule,
    pub batch_size: Option<usize>,
}

pub fn adaptive_table(blocks: &[AdaptiveJob], exec: Execution) -> CliResult<Table> {
    let mut t = Table::new(&[
        "nr",
        "nt",
        "l",
        "snr_db",
        "selector",
        "target",
        "capacity_mean",
        "capacity_se",
        "csi_rows_mean",
        "reached_rate",
        "visited_mean",
        "efficient_mean",
        "full_capacity_mean",
        "full_visited_mean",
        "full_efficient_mean",
    ]);
    block_meta(&mut t, blocks)?;
    for job in blocks {
        let cfg = &job.cfg;
        for p in run_adaptive(cfg, job.target, job.batch_size, exec)? {
            t.push(vec![
                cfg.nr.to_string(),
                cfg.nt.to_string(),
                cfg.l.to_string(),
                f(p.snr_db),
                cfg.selector.to_string(),
                f(p.target),
                f(p.capacity.mean),
                f(p.capacity.std_error),
                f(p.csi_rows.mean),
                f(p.reached_rate),
                f(p.visited_nodes.mean),
                f(p.mean_efficient),
                f(p.full_capacity.mean),
                f(p.full_visited_nodes.mean),
                f(p.full_mean_efficient),
            ]);
        }
    }
    Ok(t)
}
