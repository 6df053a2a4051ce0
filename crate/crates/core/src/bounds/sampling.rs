//! Random-sampling oracles: the best value among seeded random feasible
//! scenarios of one regime. Optimizers must dominate these.

use rand_chacha::rand_core::RngCore;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{hermitian_eigen, largest_singular_value, ComplexMatrix};
use crate::random::{random_observable_matrix, seeded};
use crate::scenario::{bell_operator, Regime, ValueRange};
use crate::BellScenario;

const CHUNK: usize = 1024;

/// Per-sample objective: `λmax(B)` for the classical and local regimes, `σmax(B)` for the nonlocal one.
fn sample_value(rng: &mut impl RngCore, regime: Regime, dim: usize, range: ValueRange) -> Result<f64> {
    match regime {
        Regime::Classical => {
            let mut diag = || -> Result<ComplexMatrix> {
                let d = random_observable_matrix(rng, dim, range)?;
                let v: Vec<f64> = hermitian_eigen(&d)?.eigenvalues;
                ComplexMatrix::from_diagonal(&v)
            };
            let s = BellScenario::tensor([diag()?, diag()?], [diag()?, diag()?], range)?;
            Ok(hermitian_eigen(&bell_operator(&s))?.max())
        }
        Regime::LocalHiddenVariable => {
            let mut draw = || random_observable_matrix(rng, dim, range);
            let s = BellScenario::tensor([draw()?, draw()?], [draw()?, draw()?], range)?;
            Ok(hermitian_eigen(&bell_operator(&s))?.max())
        }
        Regime::Nonlocal => {
            let mut draw = || random_observable_matrix(rng, dim, range);
            let s = BellScenario::shared([draw()?, draw()?, draw()?, draw()?], range)?;
            largest_singular_value(&bell_operator(&s))
        }
    }
}

/// Maximum over `samples` seeded draws. Chunk `c` draws from the seed's
/// stream `c`, so the result does not depend on thread scheduling.
pub fn sampling_oracle(regime: Regime, dim: usize, range: ValueRange, samples: usize, seed: u64) -> Result<f64> {
    let chunks = samples.div_ceil(CHUNK);
    let maxima = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seeded(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut best = f64::NEG_INFINITY;
            for _ in 0..n {
                best = best.max(sample_value(&mut rng, regime, dim, range)?);
            }
            Ok(best)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(maxima.into_iter().fold(f64::NEG_INFINITY, f64::max))
}
