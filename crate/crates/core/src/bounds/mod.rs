//! Maximal CHSH values per commutation regime.
//!
//! | regime | method | expected |
//! |---|---|---|
//! | Classical | 16-vertex enumeration | 2 |
//! | LocalHiddenVariable | seesaw on `H_a ⊗ H_b` | 2√2 |
//! | Nonlocal | projected gradient on `σmax(B)` | 2√3 |
//!
//! Restart `i` is seeded with `master_seed + i`; restarts run in parallel and
//! are merged by maximum with ties going to the lowest index, so results are
//! identical to a serial run.

mod classical;
mod config;
mod gradient;
mod report;
mod sampling;
mod seesaw;

pub use classical::{chsh_form, classical_max};
pub(crate) use config::merge_restarts;
pub use config::{OptimizationResult, OptimizerConfig, RestartOutcome, Termination};
pub use gradient::{
    analytic_gradient, ascent_from, hermitian_basis, nonlocal_dimension_search, nonlocal_max, numerical_gradient,
    objective as nonlocal_objective, shared_bell_operator, DimensionSearchRow, Quadruple, FINITE_DIFFERENCE_STEP,
};
pub use report::{naive_bound, reach_tolerance, regime_report, RegimeReport, ReportConfig, ReportRow};
pub use sampling::sampling_oracle;
pub use seesaw::{local_max, seesaw_from};
