//! Command-line front end for `bellbound`.
//!
//! [`parse_args`] turns argv into a validated [`RunConfig`]; [`run`] executes
//! it and returns the process exit status (0 success, 1 computational or file
//! error, 2 usage error).

mod args;
mod commands;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use bellbound::bounds::OptimizerConfig;
use bellbound::simulator::AngleSettings;
use bellbound::{Regime, ValueRange};
use clap::Parser;

pub use args::ModelChoice;
use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Bound,
    Expect,
    Check,
    Simulate,
    Scan,
    Report,
}

/// Thresholds that can be overridden from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceOverrides {
    pub commutator: f64,
    pub equality_gap: f64,
}

impl Default for ToleranceOverrides {
    fn default() -> Self {
        Self {
            commutator: bellbound::tolerance::TAU_COMMUTATOR,
            equality_gap: bellbound::tolerance::TAU_EQUALITY_GAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub scenario_path: Option<PathBuf>,
    pub regime: Option<Regime>,
    pub dimension: usize,
    pub restarts: usize,
    /// Restarts of the nonlocal maximizer in `report`; `restarts` covers the local one.
    pub nonlocal_restarts: usize,
    pub max_iterations: usize,
    pub shots: u64,
    pub angles: Option<AngleSettings>,
    pub model: ModelChoice,
    /// Scan step in radians.
    pub step: f64,
    pub seed: u64,
    pub value_range: ValueRange,
    pub experimental: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub csv: bool,
    pub tolerances: ToleranceOverrides,
}

impl RunConfig {
    fn new(subcommand: SubcommandKind, seed: u64, output_path: Option<PathBuf>) -> Self {
        Self {
            subcommand,
            scenario_path: None,
            regime: None,
            dimension: 2,
            restarts: 1,
            nonlocal_restarts: 1,
            max_iterations: OptimizerConfig::local().max_iterations,
            shots: 1,
            angles: None,
            model: ModelChoice::Quantum,
            step: 0.0,
            seed,
            value_range: ValueRange::symmetric(),
            experimental: None,
            output_path,
            csv: false,
            tolerances: ToleranceOverrides::default(),
        }
    }
}

/// Rejected command line. `Clap` also covers `--help` and `--version`, which exit 0.
#[derive(Debug)]
pub enum UsageError {
    Clap(clap::Error),
    Invalid { flag: &'static str, message: String },
}

impl UsageError {
    pub fn exit_code(&self) -> i32 {
        match self {
            UsageError::Clap(e) => e.exit_code(),
            UsageError::Invalid { .. } => EXIT_USAGE,
        }
    }

    /// Help and version requests go to stdout.
    pub fn is_informational(&self) -> bool {
        self.exit_code() == EXIT_OK
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UsageError::Clap(e) => write!(f, "{}", e.render()),
            UsageError::Invalid { flag, message } => write!(f, "error: invalid value for '{flag}': {message}"),
        }
    }
}

impl std::error::Error for UsageError {}

fn invalid(flag: &'static str, message: impl Into<String>) -> UsageError {
    UsageError::Invalid {
        flag,
        message: message.into(),
    }
}

/// Parse argv (including the program name) into a validated [`RunConfig`].
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(UsageError::Clap)?;
    let cfg = match cli.command {
        Command::Bound(a) => {
            let regime = Regime::from(a.regime);
            let mut cfg = RunConfig::new(SubcommandKind::Bound, a.common.seed, a.common.output);
            let (defaults, cap) = match regime {
                Regime::Classical => (OptimizerConfig::local(), usize::MAX),
                Regime::LocalHiddenVariable => (OptimizerConfig::local(), bellbound::tolerance::SITE_DIMENSION_CAP),
                Regime::Nonlocal => (OptimizerConfig::nonlocal(), bellbound::tolerance::DIMENSION_CAP),
            };
            if regime != Regime::Classical && !(2..=cap).contains(&a.dim) {
                return Err(invalid(
                    "--dim",
                    format!("must lie in 2..={cap} for the {regime} regime"),
                ));
            }
            cfg.regime = Some(regime);
            // classical assignments are scalars: one vertex sweep, no restarts
            let classical = regime == Regime::Classical;
            cfg.dimension = if classical { 1 } else { a.dim };
            cfg.restarts = if classical {
                1
            } else {
                a.restarts.unwrap_or(defaults.restarts)
            };
            cfg.max_iterations = a.max_iterations;
            cfg.value_range = a.value_range;
            cfg.csv = a.csv;
            cfg
        }
        Command::Expect(a) => scenario_config(SubcommandKind::Expect, a)?,
        Command::Check(a) => scenario_config(SubcommandKind::Check, a)?,
        Command::Simulate(a) => {
            let mut cfg = RunConfig::new(SubcommandKind::Simulate, a.common.seed, a.common.output);
            cfg.model = a.model;
            cfg.shots = a.shots;
            cfg.angles = Some(a.angles);
            cfg.csv = true;
            cfg
        }
        Command::Scan(a) => {
            if !(a.step > 0.0 && a.step <= 22.5) {
                return Err(invalid(
                    "--step",
                    format!("must lie in (0, 22.5] degrees, got {}", a.step),
                ));
            }
            let mut cfg = RunConfig::new(SubcommandKind::Scan, a.common.seed, a.common.output);
            cfg.model = a.model;
            cfg.shots = a.shots;
            cfg.step = a.step.to_radians();
            cfg.csv = true;
            cfg
        }
        Command::Report(a) => {
            if !(2..=bellbound::tolerance::SITE_DIMENSION_CAP).contains(&a.dim) {
                return Err(invalid(
                    "--dim",
                    format!("must lie in 2..={}", bellbound::tolerance::SITE_DIMENSION_CAP),
                ));
            }
            if a.experimental.is_some_and(|x| !x.is_finite()) {
                return Err(invalid("--experimental", "must be finite"));
            }
            let mut cfg = RunConfig::new(SubcommandKind::Report, a.common.seed, a.common.output);
            cfg.dimension = a.dim;
            cfg.restarts = a.local_restarts;
            cfg.nonlocal_restarts = a.nonlocal_restarts;
            cfg.value_range = a.value_range;
            cfg.experimental = a.experimental;
            cfg.csv = a.csv;
            cfg
        }
    };
    Ok(cfg)
}

fn scenario_config(kind: SubcommandKind, a: args::ScenarioArgs) -> Result<RunConfig, UsageError> {
    for (flag, v) in [
        ("--commutator-tol", a.commutator_tol),
        ("--equality-tol", a.equality_tol),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(invalid(flag, "must be a non-negative number"));
        }
    }
    let mut cfg = RunConfig::new(kind, 0, None);
    cfg.scenario_path = Some(a.scenario);
    cfg.tolerances = ToleranceOverrides {
        commutator: a.commutator_tol,
        equality_gap: a.equality_tol,
    };
    Ok(cfg)
}

/// Execute a validated configuration; returns the exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match commands::dispatch(cfg, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Parse and run; what `main` does, with injectable streams.
pub fn run_from_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let sink: &mut dyn Write = if e.is_informational() { out } else { err };
            let _ = write!(sink, "{e}");
            e.exit_code()
        }
    }
}
