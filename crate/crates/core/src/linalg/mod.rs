//! Dense complex linear algebra at the small sizes this crate works with.

mod eigen;
mod matrix;
mod ops;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigen_with, Spectrum};
pub use matrix::ComplexMatrix;
pub use ops::{
    clamp_spectrum, clamp_spectrum_with, commutator, largest_singular_value, map_spectrum, tensor_product,
    top_singular_triplet,
};
pub(crate) use state::raw_expectation;
pub use state::{expectation, QuantumState, StateKind};
