//! Command-line front end: argument parsing, figure presets and CSV output.

pub mod args;
pub mod error;
pub mod output;
pub mod recipes;
pub mod settings;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use ras_core::bounds::BoundKind;
use ras_core::SelectorKind;

use args::{BoundArg, Cli, Command, CommonArgs};
pub use error::{CliError, CliResult};
use output::Table;
use recipes::figure_recipe;
use settings::Settings;
use tables::{adaptive_table, bound_table, cdf_table, ergodic_table, select_table, sweep_table, AdaptiveJob};

/// Runs a parsed command and returns the CSV text.
pub fn execute(cli: &Cli) -> CliResult<String> {
    table(cli)?.to_csv()
}

fn common(cli: &Cli) -> &CommonArgs {
    match &cli.command {
        Command::Bound { common, .. }
        | Command::Simulate { common, .. }
        | Command::Select { common }
        | Command::Adaptive { common }
        | Command::Sweep { common } => common,
    }
}

/// Optimal selection where it is tractable, greedy above `nt`.
fn regime_selector(s: &Settings) -> SelectorKind {
    match (s.nt, s.l) {
        (Some(nt), Some(l)) if l > nt => SelectorKind::Greedy,
        _ => SelectorKind::Bab,
    }
}

fn table(cli: &Cli) -> CliResult<Table> {
    let s = Settings::from_args(common(cli))?;
    let exec = s.execution();
    match &cli.command {
        Command::Bound { kind, .. } => {
            let (nr, nt, l) = s.dims()?;
            let kind = match kind {
                BoundArg::Bf => BoundKind::Bf,
                BoundArg::Mrc => BoundKind::Mrc,
            };
            bound_table(kind, nr, nt, l, &s.snr_grid(nt)?)
        }
        Command::Select { .. } => {
            let (nr, nt, l) = s.dims()?;
            let selector = s.selector(SelectorKind::Bab)?;
            select_table(selector, s.seed.unwrap_or(settings::DEFAULT_SEED), nr, nt, l, &s.snr_grid(nt)?)
        }
        Command::Simulate { figure: Some(name), .. } => {
            let recipe = figure_recipe(name)?.with_overrides(s.trials, s.seed);
            let mut t = recipe.run(exec)?;
            t.meta("recipe", name);
            Ok(t)
        }
        Command::Simulate { figure: None, cdf, .. } => {
            let cfg = s.experiment(regime_selector(&s), false)?;
            if *cdf {
                cdf_table(&[cfg], exec)
            } else {
                ergodic_table(&[cfg], exec)
            }
        }
        Command::Adaptive { .. } => {
            let job = AdaptiveJob {
                cfg: s.experiment(regime_selector(&s), false)?,
                target: s.target()?,
                batch_size: s.batch_size()?,
            };
            adaptive_table(&[job], exec)
        }
        Command::Sweep { .. } => sweep_table(&[s.experiment(regime_selector(&s), true)?], exec),
    }
}

/// Entry point shared by the binary and tests. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|csv| emit(&cli, &csv)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, csv: &str) -> CliResult<()> {
    match &common(cli).out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}
