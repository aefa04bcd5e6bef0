//! Desk-scale presets for each figure recipe. Array dimensions match the
//! published setups where known; trial counts are reduced.

use ras_core::montecarlo::TargetRule;
use ras_core::{Execution, ExperimentConfig, SelectorKind};

use crate::error::{usage, CliResult};
use crate::output::Table;
use crate::tables::{
    adaptive_table, bound_check_table, cdf_table, ergodic_table, sweep_table, AdaptiveJob,
};

pub const FIGURES: [&str; 12] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Recipe {
    Cdf(Vec<ExperimentConfig>),
    Ergodic(Vec<ExperimentConfig>),
    BoundVsNr(Vec<ExperimentConfig>),
    Sweep(Vec<ExperimentConfig>),
    Adaptive(Vec<AdaptiveJob>),
}

impl Recipe {
    pub fn configs(&self) -> Vec<&ExperimentConfig> {
        match self {
            Recipe::Cdf(v) | Recipe::Ergodic(v) | Recipe::BoundVsNr(v) | Recipe::Sweep(v) => v.iter().collect(),
            Recipe::Adaptive(v) => v.iter().map(|j| &j.cfg).collect(),
        }
    }

    fn configs_mut(&mut self) -> Vec<&mut ExperimentConfig> {
        match self {
            Recipe::Cdf(v) | Recipe::Ergodic(v) | Recipe::BoundVsNr(v) | Recipe::Sweep(v) => v.iter_mut().collect(),
            Recipe::Adaptive(v) => v.iter_mut().map(|j| &mut j.cfg).collect(),
        }
    }

    pub fn with_overrides(mut self, trials: Option<usize>, seed: Option<u64>) -> Self {
        for cfg in self.configs_mut() {
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
        }
        self
    }

    pub fn run(&self, exec: Execution) -> CliResult<Table> {
        for cfg in self.configs() {
            cfg.validate()?;
        }
        match self {
            Recipe::Cdf(v) => cdf_table(v, exec),
            Recipe::Ergodic(v) => ergodic_table(v, exec),
            Recipe::BoundVsNr(v) => bound_check_table(v, exec),
            Recipe::Sweep(v) => sweep_table(v, exec),
            Recipe::Adaptive(v) => adaptive_table(v, exec),
        }
    }
}

fn cfg(nr: usize, nt: usize, l: usize, snr: &[f64], trials: usize, selector: SelectorKind) -> ExperimentConfig {
    ExperimentConfig {
        master_seed: 1,
        trials,
        nr,
        nt,
        l,
        snr_db_grid: snr.to_vec(),
        eta: 0.01,
        selector,
        csi_grid: None,
    }
}

fn with_grid(mut c: ExperimentConfig, grid: &[usize]) -> ExperimentConfig {
    let mut g: Vec<usize> = std::iter::once(c.l)
        .chain(grid.iter().copied())
        .filter(|&u| u >= c.l && u <= c.nr)
        .collect();
    g.sort_unstable();
    g.dedup();
    c.csi_grid = Some(g);
    c
}

fn step(lo: i32, hi: i32, by: i32) -> Vec<f64> {
    (lo..=hi).step_by(by as usize).map(f64::from).collect()
}

fn adaptive(panels: &[(usize, usize, usize)], selector: SelectorKind, batch: Option<usize>, trials: usize) -> Recipe {
    Recipe::Adaptive(
        panels
            .iter()
            .map(|&(nr, nt, l)| AdaptiveJob {
                cfg: cfg(nr, nt, l, &step(0, 20, 5), trials, selector),
                target: TargetRule::Level09,
                batch_size: batch,
            })
            .collect(),
    )
}

pub fn figure_recipe(name: &str) -> CliResult<Recipe> {
    use SelectorKind::{Bab, Greedy};
    let recipe = match name {
        // Bound CDF against its Gaussian approximation.
        "fig1" => Recipe::Cdf(
            [32, 128]
                .iter()
                .flat_map(|&nr| (1..=3).map(move |l| cfg(nr, 8, l, &[8.0], 10_000, Bab)))
                .collect(),
        ),
        // Ergodic capacity versus SNR: optimal selection below nt, greedy above.
        "fig2" => Recipe::Ergodic(
            (1..=4)
                .map(|l| cfg(64, 8, l, &step(-10, 20, 5), 500, Bab))
                .chain([8, 16].map(|l| cfg(64, 4, l, &step(-10, 20, 5), 500, Greedy)))
                .collect(),
        ),
        // Bound mean and variance versus nr.
        "fig3" => Recipe::BoundVsNr(
            [2, 16]
                .iter()
                .flat_map(|&l| [16, 32, 64, 128, 256, 512].map(|nr| cfg(nr, 8, l, &[8.0], 2000, Bab)))
                .collect(),
        ),
        "fig4" => Recipe::Sweep(
            (2..=5)
                .map(|l| with_grid(cfg(128, 8, l, &[5.0], 200, Bab), &[8, 16, 24, 32, 48, 64, 96, 128]))
                .collect(),
        ),
        "fig5" => Recipe::Sweep(
            [4, 8]
                .map(|l| with_grid(cfg(128, 8, l, &[-10.0, 0.0, 10.0], 200, Greedy), &(1..=16).map(|k| 8 * k).collect::<Vec<_>>()))
                .to_vec(),
        ),
        "fig6" => Recipe::Sweep(
            [4, 8]
                .map(|nt| with_grid(cfg(128, nt, 4, &step(0, 30, 10), 200, Bab), &[8, 16, 24, 32, 48, 64, 96, 128]))
                .to_vec(),
        ),
        "fig7" => Recipe::Sweep(vec![with_grid(
            cfg(128, 4, 4, &step(-20, 20, 10), 200, Bab),
            &[8, 12, 16, 24, 32, 48, 64, 96, 128],
        )]),
        // Adaptive capacity (fig8) and complexity (fig9) come from one run.
        "fig8" | "fig9" => adaptive(&[(64, 8, 5), (100, 7, 5), (128, 4, 4), (128, 8, 4)], Bab, None, 200),
        "fig10" => Recipe::Sweep(vec![with_grid(
            cfg(128, 8, 20, &step(-20, 20, 10), 100, Greedy),
            &(3..=16).map(|k| 8 * k).collect::<Vec<_>>(),
        )]),
        "fig11" | "fig12" => adaptive(&[(64, 8, 19), (100, 7, 16), (128, 4, 16), (128, 8, 20)], Greedy, Some(4), 100),
        other => {
            return usage(format!(
                "--figure: unknown recipe '{other}' (expected one of {})",
                FIGURES.join(", ")
            ))
        }
    };
    Ok(recipe)
}
