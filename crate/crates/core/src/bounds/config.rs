use crate::error::{Error, Result};
use crate::linalg::QuantumState;
use crate::scenario::{BellScenario, Regime, ValueRange};
use crate::tolerance::{DIMENSION_CAP, SITE_DIMENSION_CAP};

/// Settings shared by the local and nonlocal optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Local dimension per site (local regime) or of the shared space (nonlocal regime).
    pub dimension: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_size: f64,
    pub convergence_eps: f64,
    pub master_seed: u64,
    pub value_range: ValueRange,
}

impl OptimizerConfig {
    pub const DEFAULT_SEED: u64 = 42;

    /// Seesaw defaults: 8 restarts.
    pub fn local() -> Self {
        Self {
            dimension: 2,
            restarts: 8,
            max_iterations: 2000,
            step_size: 0.05,
            convergence_eps: 1e-9,
            master_seed: Self::DEFAULT_SEED,
            value_range: ValueRange::symmetric(),
        }
    }

    /// Projected-gradient defaults: 100 restarts.
    pub fn nonlocal() -> Self {
        Self {
            restarts: 100,
            ..Self::local()
        }
    }

    pub fn with_dimension(mut self, dimension: usize) -> Self {
        self.dimension = dimension;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    /// Seed of restart `i`: `master_seed + i`.
    pub fn restart_seed(&self, restart: usize) -> u64 {
        self.master_seed.wrapping_add(restart as u64)
    }

    pub(crate) fn validate(&self, max_dimension: usize) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::Argument("restarts must be at least 1".into()));
        }
        if !self.step_size.is_finite() || self.step_size <= 0.0 {
            return Err(Error::Argument(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        if self.convergence_eps.is_nan() || self.convergence_eps <= 0.0 {
            return Err(Error::Argument(format!(
                "convergence eps must be positive, got {}",
                self.convergence_eps
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::Argument("max_iterations must be at least 1".into()));
        }
        if self.dimension < 2 || self.dimension > max_dimension {
            return Err(Error::Argument(format!(
                "dimension must lie in 2..={max_dimension}, got {}",
                self.dimension
            )));
        }
        Ok(())
    }

    pub(crate) fn validate_local(&self) -> Result<()> {
        self.validate(SITE_DIMENSION_CAP)
    }

    pub(crate) fn validate_nonlocal(&self) -> Result<()> {
        self.validate(DIMENSION_CAP)
    }
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self::local()
    }
}

/// How one restart ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Improvement fell below `convergence_eps`.
    Converged,
    /// The starting point was already a fixed point; no ascent happened.
    Stationary,
    /// Ran out of iterations.
    MaxIterations,
}

impl Termination {
    pub fn converged(self) -> bool {
        !matches!(self, Termination::MaxIterations)
    }
}

/// One restart's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub value: f64,
    pub scenario: BellScenario,
    pub state: QuantumState,
    pub iterations: usize,
    pub termination: Termination,
    /// Objective after every iteration, starting with the initial point.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub regime: Regime,
    pub best_value: f64,
    pub best_scenario: BellScenario,
    pub best_state: QuantumState,
    pub best_restart: usize,
    pub restarts: usize,
    pub iterations_total: usize,
    pub converged: bool,
    pub termination: Termination,
    pub master_seed: u64,
    /// Best value of each restart, in restart order.
    pub restart_values: Vec<f64>,
}

/// Merge restart outcomes by maximum value, ties going to the lowest index.
pub(crate) fn merge_restarts(
    regime: Regime,
    cfg: &OptimizerConfig,
    outcomes: Vec<RestartOutcome>,
) -> Result<OptimizationResult> {
    let iterations_total = outcomes.iter().map(|o| o.iterations).sum();
    let restart_values: Vec<f64> = outcomes.iter().map(|o| o.value).collect();
    let mut best = 0;
    for (i, v) in restart_values.iter().enumerate() {
        if *v > restart_values[best] {
            best = i;
        }
    }
    if !outcomes.iter().any(|o| o.termination.converged()) {
        return Err(Error::OptimizerConvergence {
            restarts: outcomes.len(),
            best_value: restart_values[best],
        });
    }
    let restarts = outcomes.len();
    let winner = outcomes.into_iter().nth(best).expect("at least one restart");
    Ok(OptimizationResult {
        regime,
        best_value: winner.value,
        best_scenario: winner.scenario,
        best_state: winner.state,
        best_restart: best,
        restarts,
        iterations_total,
        converged: winner.termination.converged(),
        termination: winner.termination,
        master_seed: cfg.master_seed,
        restart_values,
    })
}
