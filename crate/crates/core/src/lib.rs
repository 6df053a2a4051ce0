//! Bell operators, commutation regimes and CHSH bounds.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: complex matrices, Hermitian eigendecomposition, tensor products.
//! - [`scenario`]: observables, Bell scenarios, the Bell operator and regime classification.
//! - [`bounds`]: maximal CHSH values per commutation regime.
//! - [`simulator`]: Monte Carlo two-photon coincidence experiments.

pub mod bounds;
pub mod error;
pub mod linalg;
pub mod random;
pub mod scenario;
pub mod simulator;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, QuantumState, Spectrum};
pub use scenario::{BellScenario, Embedding, Observable, Regime, Site, ValueRange};
