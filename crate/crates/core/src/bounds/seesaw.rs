//! Seesaw ascent for tensor-embedded scenarios.
//!
//! With `B = a1⊗(b1 + b2) + a2⊗(b1 − b2)`, each sweep takes the top
//! eigenvector `ψ` of `B`, then replaces every observable by the maximizer of
//! the linear functional it enters with `ψ` held fixed. The objective never
//! decreases.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{merge_restarts, OptimizationResult, OptimizerConfig, RestartOutcome, Termination};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, tensor_product, ComplexMatrix, QuantumState};
use crate::random::{random_observable_matrix, seeded};
use crate::scenario::{Regime, ValueRange};
use crate::BellScenario;

/// Largest allowed per-sweep decrease before the run is reported as broken.
const MONOTONE_SLACK: f64 = 1e-10;

/// Best seesaw value over `cfg.restarts` seeded random starts.
pub fn local_max(cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    cfg.validate_local()?;
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded(cfg.restart_seed(i));
            let d = cfg.dimension;
            let mut draw = || random_observable_matrix(&mut rng, d, cfg.value_range);
            let start = [draw()?, draw()?, draw()?, draw()?];
            seesaw_from(start, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    merge_restarts(Regime::LocalHiddenVariable, cfg, outcomes)
}

/// Run one seesaw from the given `[a1, a2, b1, b2]` (each `d×d`).
pub fn seesaw_from(start: [ComplexMatrix; 4], cfg: &OptimizerConfig) -> Result<RestartOutcome> {
    let [mut a1, mut a2, mut b1, mut b2] = start;
    let range = cfg.value_range;
    let mut trace = Vec::new();
    let mut termination = Termination::MaxIterations;
    let mut psi;

    let (mut value, mut vector) = top_eigenpair(&a1, &a2, &b1, &b2)?;
    trace.push(value);
    let mut iterations = 0;
    loop {
        psi = vector;
        if iterations == cfg.max_iterations {
            break;
        }
        iterations += 1;

        let da = a1.rows();
        let db = b1.rows();
        let amp = amplitude_matrix(&psi, da, db)?;

        a1 = best_response(&arm_a_coefficient(&amp, &(&b1 + &b2)), range)?;
        a2 = best_response(&arm_a_coefficient(&amp, &(&b1 - &b2)), range)?;
        b1 = best_response(&arm_b_coefficient(&amp, &(&a1 + &a2)), range)?;
        b2 = best_response(&arm_b_coefficient(&amp, &(&a1 - &a2)), range)?;

        let (next, next_vector) = top_eigenpair(&a1, &a2, &b1, &b2)?;
        trace.push(next);
        if next < value - MONOTONE_SLACK {
            return Err(Error::Argument(format!(
                "seesaw decreased from {value} to {next} at iteration {iterations}"
            )));
        }
        let improvement = next - value;
        value = next.max(value);
        vector = next_vector;
        if improvement < cfg.convergence_eps {
            termination = if iterations == 1 {
                Termination::Stationary
            } else {
                Termination::Converged
            };
            psi = vector;
            break;
        }
    }

    let scenario = BellScenario::tensor([a1, a2], [b1, b2], range)?;
    Ok(RestartOutcome {
        value,
        scenario,
        state: QuantumState::normalized(psi)?,
        iterations,
        termination,
        trace,
    })
}

fn top_eigenpair(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    b1: &ComplexMatrix,
    b2: &ComplexMatrix,
) -> Result<(f64, Vec<Complex64>)> {
    let b = &tensor_product(a1, &(b1 + b2))? + &tensor_product(a2, &(b1 - b2))?;
    let spectrum = hermitian_eigen(&b.hermitian_part())?;
    Ok((spectrum.max(), spectrum.eigenvector(0)))
}

// ψ_{i·db + j} arranged as a da×db matrix
fn amplitude_matrix(psi: &[Complex64], da: usize, db: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::new(da, db, psi.to_vec())
}

/// `T` with `⟨ψ|a ⊗ C|ψ⟩ = tr(a·T)`, i.e. `T = Ψ·Cᵀ·Ψ†`.
pub(crate) fn arm_a_coefficient(amp: &ComplexMatrix, partner: &ComplexMatrix) -> ComplexMatrix {
    (&(amp * &partner.transpose()) * &amp.adjoint()).hermitian_part()
}

/// `W` with `⟨ψ|D ⊗ b|ψ⟩ = tr(b·W)`, i.e. `W = (Ψ†·D·Ψ)ᵀ`.
pub(crate) fn arm_b_coefficient(amp: &ComplexMatrix, partner: &ComplexMatrix) -> ComplexMatrix {
    (&(&amp.adjoint() * partner) * amp).transpose().hermitian_part()
}

/// Maximizer of `tr(x·T)` over Hermitian `x` with spectrum in `range`:
/// eigenvalues of `T` map to `hi` when non-negative, to `lo` when negative.
pub(crate) fn best_response(coefficient: &ComplexMatrix, range: ValueRange) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eigen(coefficient)?;
    let zero_tol = 1e-12 * coefficient.max_abs().max(1.0);
    let (lo, hi) = (range.lo(), range.hi());
    Ok(spectrum
        .reconstruct_with(|t| if t >= -zero_tol { hi } else { lo })
        .hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expectation;
    use crate::random::random_pure_state;

    #[test]
    fn coefficient_operators_reproduce_partial_expectations() {
        let mut rng = seeded(3);
        let (da, db) = (2, 3);
        let psi = random_pure_state(&mut rng, da * db).unwrap();
        let amp = amplitude_matrix(&psi.amplitudes().unwrap(), da, db).unwrap();
        let a = random_observable_matrix(&mut rng, da, ValueRange::symmetric()).unwrap();
        let c = random_observable_matrix(&mut rng, db, ValueRange::symmetric()).unwrap();
        let direct = expectation(&psi, &tensor_product(&a, &c).unwrap()).unwrap();
        let via_a = (&a * &arm_a_coefficient(&amp, &c)).trace().re;
        let via_b = (&c * &arm_b_coefficient(&amp, &a)).trace().re;
        assert!((direct - via_a).abs() < 1e-13);
        assert!((direct - via_b).abs() < 1e-13);
    }

    #[test]
    fn best_response_beats_random_feasible() {
        let mut rng = seeded(11);
        let t = random_observable_matrix(&mut rng, 3, ValueRange::new(-5.0, 5.0).unwrap()).unwrap();
        for range in [ValueRange::symmetric(), ValueRange::unit()] {
            let x = best_response(&t, range).unwrap();
            let best = (&x * &t).trace().re;
            for _ in 0..200 {
                let y = random_observable_matrix(&mut rng, 3, range).unwrap();
                assert!((&y * &t).trace().re <= best + 1e-12);
            }
        }
    }

    #[test]
    fn identity_start_is_a_fixed_point() {
        let i = ComplexMatrix::identity(2).unwrap();
        let cfg = OptimizerConfig::local().with_restarts(1);
        let run = seesaw_from([i.clone(), i.clone(), i.clone(), i], &cfg).unwrap();
        assert_eq!(run.value, 2.0);
        assert_eq!(run.termination, Termination::Stationary);
        assert_eq!(run.iterations, 1);
    }

    #[test]
    fn reaches_tsirelson_value_in_dimension_two() {
        let r = local_max(&OptimizerConfig::local()).unwrap();
        assert!(
            (r.best_value - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-6,
            "{}",
            r.best_value
        );
        assert!(r.converged);
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = OptimizerConfig::local();
        cfg.restarts = 0;
        assert!(matches!(local_max(&cfg), Err(Error::Argument(_))));
        assert!(matches!(
            local_max(&OptimizerConfig::local().with_dimension(1)),
            Err(Error::Argument(_))
        ));
    }
}
