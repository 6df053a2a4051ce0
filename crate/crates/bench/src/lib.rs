//! Fixtures shared by the benchmarks.

use bellbound::bounds::{OptimizerConfig, Quadruple};
use bellbound::random::{gaussian_hermitian, random_observable_matrix, seeded};
use bellbound::ComplexMatrix;

pub fn hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    gaussian_hermitian(&mut seeded(seed), dim).expect("valid dimension")
}

/// A feasible random start for one nonlocal restart.
pub fn nonlocal_start(cfg: &OptimizerConfig, seed: u64) -> Quadruple {
    let mut rng = seeded(seed);
    std::array::from_fn(|_| random_observable_matrix(&mut rng, cfg.dimension, cfg.value_range).expect("valid"))
}
