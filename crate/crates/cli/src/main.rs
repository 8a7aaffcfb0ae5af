use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gausscoh::{Family, Measure, Param};

mod commands;
mod config;
mod output;

use config::Settings;

/// Geometric coherence (Bures, Hellinger) of single-mode Gaussian states.
#[derive(Debug, Parser)]
#[command(name = "gausscoh", version)]
struct Cli {
    /// File of `key = value` lines overriding grid bounds, tolerances and dim.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coherence of a single state, as JSON.
    Coherence {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "bures")]
        measure: Measure,
    },
    /// Coherence along a grid of one parameter, as CSV.
    Sweep(SweepArgs),
    /// Where the coherence crosses a target as one parameter varies.
    Threshold {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "bures")]
        measure: Measure,
        #[arg(long, default_value_t = 0.99, allow_negative_numbers = true)]
        target: f64,
        #[arg(long)]
        vary: Param,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
    },
    /// Coherence along a ladder of thermal photon numbers.
    Asymptote {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "bures")]
        measure: Measure,
        /// Comma-separated, strictly increasing thermal photon numbers.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ladder: Option<Vec<f64>>,
    },
    /// Compares closed-form fidelity and affinity with the Fock-space oracle.
    Validate {
        /// Starting Fock dimension of the convergence ladder.
        #[arg(long)]
        dim: Option<usize>,
        /// `standard`, `thermal`, or axes such as `beta=0,1;r=1;psi=0;n_th=0,2;refs=0,1`.
        #[arg(long, default_value = "standard")]
        grid: String,
        #[arg(long, value_enum, default_value_t = Quantity::Both)]
        quantity: Quantity,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Fidelity,
    Affinity,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

/// State parameters; anything not given is zero.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, default_value = "generic")]
    pub family: Family,
    /// Real part of the displacement amplitude.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "n_sq")]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub psi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n_th: Option<f64>,
    /// Squeezing photon number sinh^2 r.
    #[arg(long, allow_negative_numbers = true)]
    pub n_sq: Option<f64>,
    /// Coherent photon number |beta|^2.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["beta", "beta_im"])]
    pub n_coh: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub vary: Param,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    #[arg(long, value_delimiter = ',', default_value = "bures,hellinger")]
    pub measures: Vec<Measure>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match &cli.config {
        Some(path) => match Settings::load(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(commands::Failure::USAGE);
            }
        },
        None => Settings::default(),
    };
    let result = match cli.command {
        Command::Coherence { state, measure } => commands::coherence(&state, measure, &settings),
        Command::Sweep(args) => commands::sweep(&args, &settings),
        Command::Threshold {
            state,
            measure,
            target,
            vary,
            lo,
            hi,
        } => commands::threshold(&state, measure, target, vary, lo, hi, &settings),
        Command::Asymptote {
            state,
            measure,
            ladder,
        } => commands::asymptote(&state, measure, ladder.as_deref(), &settings),
        Command::Validate {
            dim,
            grid,
            quantity,
        } => commands::validate(dim, &grid, quantity, &settings),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(msg) = &f.message {
                eprintln!("error: {msg}");
            }
            ExitCode::from(f.code)
        }
    }
}
