use std::path::PathBuf;

use bellbound::simulator::AngleSettings;
use bellbound::tolerance::{TAU_COMMUTATOR, TAU_EQUALITY_GAP};
use bellbound::{Regime, ValueRange};
use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellbound",
    version,
    about = "Bell-operator bounds and coincidence simulation"
)]
pub(crate) struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Command {
    /// Maximize the CHSH value within one commutation regime
    Bound(BoundArgs),
    /// Evaluate a scenario file: expectation, magnitude bound, regime, swap delta
    Expect(ScenarioArgs),
    /// Like `expect`, plus the six commutator norms
    Check(ScenarioArgs),
    /// Simulate a coincidence experiment and print one CSV row
    Simulate(SimulateArgs),
    /// Sweep the one-parameter angle family and write S(phi) as CSV
    Scan(ScanArgs),
    /// Run all three maximizers and compare against an optional measured value
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum RegimeArg {
    Classical,
    #[value(alias = "lhv", alias = "local-hidden-variable")]
    Local,
    Nonlocal,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Classical => Regime::Classical,
            RegimeArg::Local => Regime::LocalHiddenVariable,
            RegimeArg::Nonlocal => Regime::Nonlocal,
        }
    }
}

/// Model names accepted by `--model`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Quantum,
    Deterministic,
    Malus,
}

impl ModelChoice {
    pub fn name(self) -> &'static str {
        match self {
            ModelChoice::Quantum => "quantum",
            ModelChoice::Deterministic => "deterministic",
            ModelChoice::Malus => "malus",
        }
    }
}

#[derive(Debug, Args)]
pub(crate) struct Common {
    /// Master seed [env: BELLBOUND_SEED]
    #[arg(long, env = "BELLBOUND_SEED", default_value_t = 42, hide_env = true)]
    pub seed: u64,
    /// Write CSV output to this file instead of stdout
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(crate) struct BoundArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// Hilbert-space dimension per site (local) or of the shared space (nonlocal)
    #[arg(long, default_value_t = 2, value_parser = positive_usize())]
    pub dim: usize,
    /// Random restarts [default: 8 for local, 100 for nonlocal]
    #[arg(long, value_parser = positive_usize())]
    pub restarts: Option<usize>,
    #[arg(long, default_value_t = 2000, value_parser = positive_usize())]
    pub max_iterations: usize,
    /// Allowed observable eigenvalues, `lo,hi`
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    pub value_range: ValueRange,
    /// Print the CSV row instead of the text summary
    #[arg(long)]
    pub csv: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub(crate) struct ScenarioArgs {
    /// Scenario file
    #[arg(long, short = 's')]
    pub scenario: PathBuf,
    /// Commutator norm above which a pair counts as noncommuting
    #[arg(long, default_value_t = TAU_COMMUTATOR)]
    pub commutator_tol: f64,
    /// Gap above which `<B> = sqrt(<B+B>)` is reported as failing
    #[arg(long, default_value_t = TAU_EQUALITY_GAP)]
    pub equality_tol: f64,
}

#[derive(Debug, Args)]
pub(crate) struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = ModelChoice::Quantum)]
    pub model: ModelChoice,
    /// Photon pairs per setting pair
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    /// Polarizer angles in degrees: alpha1,alpha2,beta1,beta2
    #[arg(long, default_value = "0,45,22.5,-22.5", value_parser = parse_angles, allow_hyphen_values = true)]
    pub angles: AngleSettings,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub(crate) struct ScanArgs {
    #[arg(long, value_enum, default_value_t = ModelChoice::Quantum)]
    pub model: ModelChoice,
    /// Photon pairs per setting pair at every scan point
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    /// Scan step in degrees, at most 22.5
    #[arg(long, default_value_t = 5.625)]
    pub step: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub(crate) struct ReportArgs {
    /// Measured CHSH value to test each regime against
    #[arg(long, allow_hyphen_values = true)]
    pub experimental: Option<f64>,
    /// Dimension for the local and nonlocal maximizers
    #[arg(long, default_value_t = 2, value_parser = positive_usize())]
    pub dim: usize,
    /// Restarts for the local maximizer
    #[arg(long, default_value_t = 8, value_parser = positive_usize())]
    pub local_restarts: usize,
    /// Restarts for the nonlocal maximizer
    #[arg(long, default_value_t = 100, value_parser = positive_usize())]
    pub nonlocal_restarts: usize,
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    pub value_range: ValueRange,
    #[arg(long)]
    pub csv: bool,
    #[command(flatten)]
    pub common: Common,
}

fn positive_usize() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::<usize>::new().range(1..)
}

fn parse_angles(v: &str) -> Result<AngleSettings, String> {
    let parts: Vec<f64> = v
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad angle `{}`", t.trim())))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a1, a2, b1, b2] => AngleSettings::from_degrees(a1, a2, b1, b2).map_err(|e| e.to_string()),
        _ => Err(format!("expected four comma-separated angles, got {}", parts.len())),
    }
}
