use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ras", version, about = "Receive antenna selection experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaussian approximation of an upper capacity bound.
    Bound {
        #[arg(value_enum)]
        kind: BoundArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ergodic capacity against the bounds, the bound CDF, or a figure recipe.
    Simulate {
        /// Run a preset (fig1 .. fig12). Only --trials, --seed and --sequential
        /// override a preset.
        #[arg(long)]
        figure: Option<String>,
        /// Emit the bound's empirical CDF next to its Gaussian approximation.
        #[arg(long)]
        cdf: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Select antennas on one channel draw.
    Select {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Adaptive partial-CSI selection against full-CSI selection.
    Adaptive {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Capacity and efficiency versus the number of acquired CSI rows.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Bf,
    Mrc,
}

#[derive(Clone, Debug, Default, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub nr: Option<usize>,
    #[arg(long)]
    pub nt: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Normalized SNR per transmit antenna in dB; comma-separated list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub snr_db: Option<Vec<f64>>,
    /// Total SNR in dB; converted with the per-transmit-antenna normalization.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "snr_db")]
    pub snr_total: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// es, greedy, bab or norm.
    #[arg(long)]
    pub algo: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub csi_grid: Option<Vec<usize>>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// level09 or value:<bits>.
    #[arg(long)]
    pub target: Option<String>,
    /// Run trials on one thread. Output is identical either way.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}
