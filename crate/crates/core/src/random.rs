//! Seeded sampling of feasible observables and states.
//!
//! Hermitians are drawn with independent standard-normal real and imaginary
//! parts, symmetrized, then spectrum-clamped into the value range. Every
//! sampler takes the generator explicitly so oracles stay reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{clamp_spectrum, ComplexMatrix, QuantumState};
use crate::scenario::ValueRange;

/// Generator used for every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Gaussian Hermitian matrix, not yet projected.
pub fn gaussian_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(normal(rng), normal(rng)))
        .collect();
    Ok(ComplexMatrix::new(dim, dim, data)?.hermitian_part())
}

/// Hermitian matrix with spectrum inside `range`.
pub fn random_observable_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize, range: ValueRange) -> Result<ComplexMatrix> {
    clamp_spectrum(&gaussian_hermitian(rng, dim)?, range.lo(), range.hi())
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<QuantumState> {
    let amps = (0..dim).map(|_| Complex64::new(normal(rng), normal(rng))).collect();
    QuantumState::normalized(amps)
}

/// Mixed state `G·G† / tr(G·G†)` from a Gaussian `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<QuantumState> {
    let data = (0..dim * dim)
        .map(|_| Complex64::new(normal(rng), normal(rng)))
        .collect();
    let g = ComplexMatrix::new(dim, dim, data)?;
    let gg = (&g * &g.adjoint()).hermitian_part();
    let tr = gg.trace().re;
    QuantumState::density(gg.scale_real(1.0 / tr))
}
