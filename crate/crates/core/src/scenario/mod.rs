//! Bell scenarios: four observables, the Bell operator built from them, and
//! the commutation regime they fall into.

mod bell;
mod format;
mod observable;
mod regime;
mod swap;

pub use bell::{
    bell_expectation, bell_operator, build_scenario, correlation_table, evaluate, magnitude_bound, optimal_state,
    BellEvaluation, BellScenario, CorrelationTable, Embedding,
};
pub use format::{parse_scenario, ScenarioFile, StateSpec};
pub use observable::{Observable, Site, ValueRange};
pub use regime::{classify, classify_regime, CommutationRegime, CommutatorWitness, Regime};
pub use swap::swap_assumption_delta;
