//! Flag and config-file merging, defaults, and validation.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use ras_core::montecarlo::TargetRule;
use ras_core::{linear_to_db, EfficiencyParams, Execution, ExperimentConfig, SelectorKind};

use crate::args::CommonArgs;
use crate::error::{usage, CliResult};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_ETA: f64 = 0.01;

/// Every setting a subcommand may read. Unset fields fall back to the
/// config file, then to defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub nr: Option<usize>,
    pub nt: Option<usize>,
    pub l: Option<usize>,
    pub snr_db: Option<Vec<f64>>,
    pub snr_total: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub eta: Option<f64>,
    pub algo: Option<String>,
    pub csi_grid: Option<Vec<usize>>,
    pub batch_size: Option<usize>,
    pub target: Option<String>,
    #[serde(default)]
    pub sequential: bool,
}

impl Settings {
    pub fn from_args(args: &CommonArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(path) => load(path)?,
            None => Settings::default(),
        };
        let flags = Settings {
            nr: args.nr,
            nt: args.nt,
            l: args.l,
            snr_db: args.snr_db.clone(),
            snr_total: args.snr_total.clone(),
            trials: args.trials,
            seed: args.seed,
            eta: args.eta,
            algo: args.algo.clone(),
            csi_grid: args.csi_grid.clone(),
            batch_size: args.batch_size,
            target: args.target.clone(),
            sequential: args.sequential,
        };
        Ok(flags.over(file))
    }

    fn over(self, base: Settings) -> Settings {
        // An SNR flag of either form replaces both SNR keys from the file.
        let snr_given = self.snr_db.is_some() || self.snr_total.is_some();
        Settings {
            nr: self.nr.or(base.nr),
            nt: self.nt.or(base.nt),
            l: self.l.or(base.l),
            snr_db: if snr_given { self.snr_db } else { base.snr_db },
            snr_total: if snr_given { self.snr_total } else { base.snr_total },
            trials: self.trials.or(base.trials),
            seed: self.seed.or(base.seed),
            eta: self.eta.or(base.eta),
            algo: self.algo.or(base.algo),
            csi_grid: self.csi_grid.or(base.csi_grid),
            batch_size: self.batch_size.or(base.batch_size),
            target: self.target.or(base.target),
            sequential: self.sequential || base.sequential,
        }
    }

    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    /// Array dimensions, checked against each other.
    pub fn dims(&self) -> CliResult<(usize, usize, usize)> {
        let nr = required(self.nr, "--nr")?;
        let nt = required(self.nt, "--nt")?;
        let l = required(self.l, "--l")?;
        if nr == 0 {
            return usage("--nr must be at least 1");
        }
        if nt == 0 {
            return usage("--nt must be at least 1");
        }
        if l == 0 {
            return usage("--l must be at least 1");
        }
        if l > nr {
            return usage(format!("--l ({l}) must not exceed --nr ({nr})"));
        }
        Ok((nr, nt, l))
    }

    /// SNR grid in dB of normalized SNR.
    pub fn snr_grid(&self, nt: usize) -> CliResult<Vec<f64>> {
        let grid = match (&self.snr_db, &self.snr_total) {
            (Some(_), Some(_)) => return usage("--snr-db and --snr-total are mutually exclusive"),
            (Some(db), None) => db.clone(),
            (None, Some(total)) => total.iter().map(|t| t - linear_to_db(nt as f64)).collect(),
            (None, None) => return usage("--snr-db (or --snr-total) is required"),
        };
        if grid.is_empty() {
            return usage("--snr-db must list at least one value");
        }
        if grid.iter().any(|s| !s.is_finite()) {
            return usage("--snr-db values must be finite");
        }
        Ok(grid)
    }

    pub fn selector(&self, default: SelectorKind) -> CliResult<SelectorKind> {
        match &self.algo {
            None => Ok(default),
            Some(name) => SelectorKind::from_str(name)
                .or_else(|_| usage(format!("--algo: unknown algorithm '{name}' (expected es, greedy, bab or norm)"))),
        }
    }

    pub fn target(&self) -> CliResult<TargetRule> {
        match self.target.as_deref() {
            None | Some("level09") => Ok(TargetRule::Level09),
            Some(s) => match s.strip_prefix("value:").map(str::parse::<f64>) {
                Some(Ok(v)) if v.is_finite() => Ok(TargetRule::Value(v)),
                _ => usage(format!("--target: expected level09 or value:<bits>, got '{s}'")),
            },
        }
    }

    pub fn batch_size(&self) -> CliResult<Option<usize>> {
        match self.batch_size {
            Some(0) => usage("--batch-size must be at least 1"),
            b => Ok(b),
        }
    }

    /// Full experiment configuration with flag-named diagnostics.
    pub fn experiment(&self, default_selector: SelectorKind, need_csi_grid: bool) -> CliResult<ExperimentConfig> {
        let (nr, nt, l) = self.dims()?;
        let snr_db_grid = self.snr_grid(nt)?;
        let trials = self.trials.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return usage("--trials must be at least 1");
        }
        let eta = self.eta.unwrap_or(DEFAULT_ETA);
        if EfficiencyParams::new(eta).is_err() {
            return usage(format!("--eta must lie in [0, 1), got {eta}"));
        }
        let csi_grid = match (&self.csi_grid, need_csi_grid) {
            (None, true) => return usage("--csi-grid is required"),
            (Some(g), _) if g.is_empty() => return usage("--csi-grid must list at least one value"),
            (Some(g), _) => {
                if let Some(bad) = g.iter().find(|&&u| u < l || u > nr) {
                    return usage(format!("--csi-grid value {bad} outside [--l, --nr] = [{l}, {nr}]"));
                }
                Some(g.clone())
            }
            (None, false) => None,
        };
        let cfg = ExperimentConfig {
            master_seed: self.seed.unwrap_or(DEFAULT_SEED),
            trials,
            nr,
            nt,
            l,
            snr_db_grid,
            eta,
            selector: self.selector(default_selector)?,
            csi_grid,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn required<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    match v {
        Some(v) => Ok(v),
        None => usage(format!("{flag} is required")),
    }
}

fn load(path: &Path) -> CliResult<Settings> {
    let text = fs::read_to_string(path).or_else(|e| usage(format!("--config: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).or_else(|e| usage(format!("--config: {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Settings {
        Settings {
            nr: Some(16),
            nt: Some(4),
            l: Some(2),
            snr_db: Some(vec![5.0]),
            ..Settings::default()
        }
    }

    #[test]
    fn flags_override_file() {
        let file = Settings {
            nr: Some(32),
            trials: Some(7),
            snr_total: Some(vec![10.0]),
            ..Settings::default()
        };
        let merged = base().over(file);
        assert_eq!(merged.nr, Some(16));
        assert_eq!(merged.trials, Some(7));
        assert_eq!(merged.snr_total, None);
    }

    #[test]
    fn total_snr_is_normalized() {
        let s = Settings {
            snr_db: None,
            snr_total: Some(vec![10.0]),
            ..base()
        };
        let g = s.snr_grid(4).unwrap();
        assert!((g[0] - (10.0 - 10.0 * 4f64.log10())).abs() < 1e-12);
    }

    #[test]
    fn diagnostics_name_the_flag() {
        let s = Settings { l: Some(0), ..base() };
        assert!(s.dims().unwrap_err().to_string().contains("--l"));
        let s = Settings { l: Some(20), ..base() };
        assert!(s.dims().unwrap_err().to_string().contains("--l"));
        let s = Settings {
            csi_grid: Some(vec![1]),
            ..base()
        };
        assert!(s.experiment(SelectorKind::Bab, true).unwrap_err().to_string().contains("--csi-grid"));
        let s = Settings {
            target: Some("value:x".into()),
            ..base()
        };
        assert!(s.target().unwrap_err().to_string().contains("--target"));
        let s = Settings {
            algo: Some("magic".into()),
            ..base()
        };
        assert!(s.selector(SelectorKind::Bab).unwrap_err().to_string().contains("--algo"));
    }

    #[test]
    fn target_forms() {
        let s = Settings {
            target: Some("value:12.5".into()),
            ..base()
        };
        assert_eq!(s.target().unwrap(), TargetRule::Value(12.5));
        assert_eq!(base().target().unwrap(), TargetRule::Level09);
    }
}
