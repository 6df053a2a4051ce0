use crate::bounds::{classical_max, local_max, nonlocal_max, OptimizationResult, OptimizerConfig};
use crate::error::Error;
use crate::scenario::{Regime, ValueRange};

/// Ceiling from `⟨B†B⟩ ≤ 16`.
pub fn naive_bound() -> f64 {
    4.0
}

/// Tolerance within which an achieved value counts as reaching the regime bound.
pub fn reach_tolerance(regime: Regime) -> f64 {
    match regime {
        Regime::Classical => 1e-12,
        Regime::LocalHiddenVariable => 1e-6,
        Regime::Nonlocal => 1e-3,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    pub classical_range: ValueRange,
    pub local: OptimizerConfig,
    pub nonlocal: OptimizerConfig,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            classical_range: ValueRange::symmetric(),
            local: OptimizerConfig::local(),
            nonlocal: OptimizerConfig::nonlocal(),
        }
    }
}

impl ReportConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.local.master_seed = seed;
        self.nonlocal.master_seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub regime: Regime,
    pub expected_bound: f64,
    pub outcome: Result<OptimizationResult, Error>,
    /// Achieved value lies within [`reach_tolerance`] of the expected bound.
    pub reached: bool,
    /// The supplied experimental value does not exceed this regime's bound; `None` without one.
    pub consistent: Option<bool>,
}

impl ReportRow {
    pub fn achieved(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|r| r.best_value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub rows: Vec<ReportRow>,
    pub experimental_value: Option<f64>,
}

impl RegimeReport {
    pub fn row(&self, regime: Regime) -> &ReportRow {
        self.rows
            .iter()
            .find(|r| r.regime == regime)
            .expect("all regimes present")
    }
}

/// Run all three maximizers and compare them with the regime bounds and an
/// optional experimental value. A failing optimizer only affects its own row.
pub fn regime_report(cfg: &ReportConfig, experimental_value: Option<f64>) -> RegimeReport {
    let rows = Regime::ALL
        .iter()
        .map(|&regime| {
            let outcome = match regime {
                Regime::Classical => classical_max(cfg.classical_range),
                Regime::LocalHiddenVariable => local_max(&cfg.local),
                Regime::Nonlocal => nonlocal_max(&cfg.nonlocal),
            };
            let expected_bound = regime.expected_bound();
            let reached = outcome
                .as_ref()
                .map(|r| (r.best_value - expected_bound).abs() <= reach_tolerance(regime))
                .unwrap_or(false);
            let consistent = experimental_value.map(|e| e <= expected_bound + 1e-12);
            ReportRow {
                regime,
                expected_bound,
                outcome,
                reached,
                consistent,
            }
        })
        .collect();
    RegimeReport {
        rows,
        experimental_value,
    }
}
