mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::sweep::SweepSpec;

#[derive(Debug, Parser)]
#[command(
    name = "qiranging",
    version,
    about = "Range-delay accuracy bounds for classical and quantum-illumination radar"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Rms bandwidth in Hz (converted to rad/s internally).
    #[arg(long, global = true)]
    pub rms_bandwidth_hz: Option<f64>,
    /// Range uncertainty in meters.
    #[arg(long, global = true, conflicts_with = "delta_tau_s")]
    pub delta_r_m: Option<f64>,
    /// Delay uncertainty in seconds.
    #[arg(long, global = true)]
    pub delta_tau_s: Option<f64>,
    /// Single SNR point in dB.
    #[arg(
        long,
        global = true,
        conflicts_with = "snr_sweep",
        allow_negative_numbers = true
    )]
    pub snr_db: Option<f64>,
    /// SNR sweep in dB, `start:stop:points`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub snr_sweep: Option<SweepSpec>,
    /// Flat `key = value` link configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte-Carlo seed (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte-Carlo sample count (default 10000).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical and quantum Cramér–Rao bounds against SNR.
    Crb {
        #[command(flatten)]
        common: Common,
    },
    /// Ziv–Zakai bounds and asymptotes, normalized to the prior rms width.
    Zzb {
        #[command(flatten)]
        common: Common,
        /// Threshold sidecar (JSON); defaults to `<out>.thresholds.json`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Classical and quantum threshold SNRs and their gap.
    Threshold {
        #[command(flatten)]
        common: Common,
    },
    /// Accuracy advantage report at the quantum threshold or a given SNR.
    Advantage {
        #[command(flatten)]
        common: Common,
        /// Fit the closed-form advantage over a range-uncertainty sweep in
        /// meters, `start:stop:points` (log spaced).
        #[arg(long)]
        alpha_sweep: Option<SweepSpec>,
    },
    /// Advantage over a range × pulse-duration grid (needs a link config).
    Contour {
        #[command(flatten)]
        common: Common,
        /// Ranges in meters, `start:stop:points` (log spaced).
        #[arg(long)]
        range_sweep: SweepSpec,
        /// Pulse durations in seconds, `start:stop:points` (log spaced).
        #[arg(long)]
        duration_sweep: SweepSpec,
    },
    /// Monte-Carlo phase-incoherent Fisher information against SNR.
    #[command(name = "incoherent-mc")]
    IncoherentMc {
        #[command(flatten)]
        common: Common,
        /// Background brightness, photons per mode.
        #[arg(long, default_value_t = 100.0)]
        n_b: f64,
        /// Rms duration of the transform-limited Gaussian pulse, seconds.
        #[arg(long, default_value_t = 1e-6)]
        pulse_duration_s: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
