//! `polar`: command-line front end for polarization-core.
//!
//! Exit codes: 0 success, 2 usage error, 3 unreadable or invalid input file
//! (including a scenario over the stage cap), 4 invariant failure.

/// `println!` that exits quietly once stdout is closed (`polar ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Mode;

pub const TOLERANCE_ENV: &str = "POLAR_TOLERANCE";
pub const STAGE_CAP_ENV: &str = "POLAR_STAGE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "polar",
    version,
    about = "Generalized polarization amplitudes, observables and analyzer-chain simulation",
    after_help = "Tolerance and stage cap resolve as: command-line flag, then scenario file \
                  (tolerance only), then POLAR_TOLERANCE / POLAR_STAGE_CAP, then the built-in \
                  defaults 1e-12 and 20."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Angles on the command line are degrees (default)
    #[arg(long, global = true, conflicts_with = "rad")]
    pub deg: bool,
    /// Angles on the command line are radians
    #[arg(long, global = true)]
    pub rad: bool,
    /// One `kind key=value ...` record per line, floats with 17 significant digits
    #[arg(long, global = true)]
    pub machine: bool,
    /// Numeric tolerance for invariant checks
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tolerance: Option<f64>,
    /// Maximum number of analyzer stages for `simulate`
    #[arg(long, global = true, value_name = "N")]
    pub stage_cap: Option<usize>,
}

impl GlobalOpts {
    pub fn mode(&self) -> Mode {
        if self.machine {
            Mode::Machine
        } else {
            Mode::Human
        }
    }

    /// The single point where command-line angles become radians.
    pub fn to_radians(&self, value: f64) -> f64 {
        if self.rad {
            value
        } else {
            value.to_radians()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition amplitude between two branch labels
    #[command(allow_negative_numbers = true)]
    Amp {
        theta_a: f64,
        alpha_a: f64,
        branch_a: String,
        theta_b: f64,
        alpha_b: f64,
        branch_b: String,
    },
    /// Transition probability between two branch labels
    #[command(allow_negative_numbers = true)]
    Prob {
        theta_a: f64,
        alpha_a: f64,
        branch_a: String,
        theta_b: f64,
        alpha_b: f64,
        branch_b: String,
    },
    /// Observable matrix for measurement direction b in basis direction c
    #[command(allow_negative_numbers = true)]
    Operator {
        theta_b: f64,
        alpha_b: f64,
        theta_c: f64,
        alpha_c: f64,
        /// Value on the parallel outcome
        #[arg(default_value_t = 1.0)]
        r_plus: f64,
        /// Value on the perpendicular outcome
        #[arg(default_value_t = -1.0)]
        r_minus: f64,
    },
    /// Eigenvectors of the polarization operator for direction b in basis c
    #[command(allow_negative_numbers = true)]
    Eigvec {
        theta_b: f64,
        alpha_b: f64,
        theta_c: f64,
        alpha_c: f64,
    },
    /// Expectation of the polarization operator along b for a photon prepared in (a, branch)
    #[command(allow_negative_numbers = true)]
    Expect {
        theta_a: f64,
        alpha_a: f64,
        branch: String,
        theta_b: f64,
        alpha_b: f64,
        /// Basis direction for the matrix route (theta alpha); default x
        #[arg(long, num_args = 2, value_names = ["THETA", "ALPHA"])]
        basis: Option<Vec<f64>>,
    },
    /// Exact or Monte Carlo analyzer chain from a TOML scenario file
    Simulate {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Print the exact outcome distribution instead of sampling
        #[arg(long)]
        exact: bool,
    },
    /// Run every invariant suite over random draws and report errata
    Verify {
        #[arg(long, default_value_t = 100_000)]
        draws: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("polar: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
