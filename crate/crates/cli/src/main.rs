//! `galinv`: Galilean invariants of sampled motions.
//!
//! Exit codes: 0 success or equivalent, 1 not equivalent or a failed check,
//! 2 usage, parse or validation error.

mod commands;
mod output;
mod trajectory;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galinv_core::moving_frame::DiffScheme;

#[derive(Parser, Debug)]
#[command(name = "galinv", version, about = "Galilean differential invariants and equivalence of motions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub cfg: RunConfig,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Finite-difference scheme for sampled jets.
    #[arg(long, global = true, value_enum, default_value_t = Scheme::Central4)]
    pub scheme: Scheme,
    /// Savitzky-Golay window (odd); smoothing is off unless set.
    #[arg(long, global = true)]
    pub smooth_window: Option<usize>,
    /// Savitzky-Golay polynomial degree.
    #[arg(long, global = true, default_value_t = 4)]
    pub smooth_degree: usize,
    /// Equivalence tolerance on the relative pointwise residual.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Lower bound on |x_tt| (absolute).
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_a: f64,
    /// Lower bound on the sine of the angle between x_tt and x_ttt.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_b: f64,
    /// Sine below which a regular sample is flagged ill-conditioned.
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub conditioning: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for generators and self-checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Central2,
    Central4,
}

impl From<Scheme> for DiffScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Central2 => DiffScheme::Central2,
            Scheme::Central4 => DiffScheme::Central4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-sample invariants (t, a1, a2, a3, jcurv, flags) of a trajectory.
    Invariants { input: PathBuf },
    /// Test whether B(t + s) = g·A(t) for some time shift s and element g.
    Equiv {
        /// Reference trajectory.
        a: PathBuf,
        /// Trajectory tested against A.
        b: PathBuf,
        /// Window `LO,HI` on A's time axis; defaults to A's interior shrunk by the boundary width.
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        /// Anchor time on A for frame recovery; chosen automatically if unset.
        #[arg(long)]
        anchor: Option<f64>,
        /// Number of candidate shifts in the coarse scan.
        #[arg(long, default_value_t = 401)]
        shift_grid: usize,
        /// Shift search range `LO,HI`; defaults to every shift keeping B's domain in reach.
        #[arg(long, value_parser = parse_window)]
        shift_range: Option<(f64, f64)>,
        /// Samples of the window used for matching.
        #[arg(long, default_value_t = 101)]
        window_samples: usize,
    },
    /// Write a synthetic trajectory as `t,x,y,z` CSV.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[command(flatten)]
        grid: GridArgs,
        /// Output file; stdout if unset.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a self-check suite.
    Check {
        /// Suite to run.
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Negate one generator before the bracket check.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// First sample time.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t0: f64,
    /// Sample spacing.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub step: f64,
    /// Number of samples.
    #[arg(long, global = true, default_value_t = 3000)]
    pub samples: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenKind {
    /// `(r cos ωt, r sin ωt, 0)`.
    Circle {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
    },
    /// `(r cos ωt, r sin ωt, c t²)`.
    HelixLike {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Coefficient `c` of the vertical term.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        lift: f64,
    },
    /// Random polynomial with coefficients uniform in `±scale`.
    Poly {
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Apply a random group element to every event of a trajectory file.
    BoostedCopy {
        /// Trajectory CSV to transform.
        input: PathBuf,
        /// Write the element as JSON to this file.
        #[arg(long)]
        emit_transform: Option<PathBuf>,
        /// Magnitude of the time shift.
        #[arg(long, default_value_t = 1.0)]
        time_scale: f64,
        /// Magnitude of the boost components.
        #[arg(long, default_value_t = 1.0)]
        velocity_scale: f64,
        /// Magnitude of the translation components.
        #[arg(long, default_value_t = 2.0)]
        translation_scale: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    MaurerCartan,
    Dimensions,
    Frames,
    All,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `LO,HI`")?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("invalid number `{a}`"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("invalid number `{b}`"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}, {hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GALINV_LOG", "warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
