//! Two-photon coincidence experiments: local hidden-variable models and the
//! quantum prediction for `Φ⁺`, sampled per setting pair and combined into
//! the CHSH value.

mod csv;
mod exact;
mod model;
mod run;
mod scan;
mod stats;

pub use csv::{format_full, simulation_row, SIMULATION_HEADER};
pub use exact::{deterministic_table, enumerate_deterministic_lhv, expected_correlation, expected_table};
pub use model::{
    AngleSettings, Detection, HiddenDistribution, LhvModel, LocalResponse, Model, ResponseRule, SettingPair,
};
pub use run::{
    outcome_stream, quantum_joint_probabilities, run_lhv, run_lhv_with, run_model, run_quantum, run_quantum_with,
    BLOCK_SHOTS,
};
pub use scan::{angle_scan, ScanRow};
pub use stats::{chsh_estimate, ChshEstimate, CoincidenceStats, PairCounts};
