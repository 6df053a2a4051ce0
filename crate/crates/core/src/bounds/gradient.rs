//! Projected-gradient ascent of `σmax(B)` for shared-space scenarios.
//!
//! `B = a1(b1 + b2) + a2(b1 − b2)` with plain matrix products. For the top
//! singular triplet `B·v = σ·u`, a Hermitian perturbation `δx` of one
//! observable changes `σ` by `Re(u†·δB·v)`, which gives a Hermitian gradient
//! per observable. After each step every observable is projected back onto
//! the feasible set with [`clamp_spectrum`].

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{merge_restarts, OptimizationResult, OptimizerConfig, RestartOutcome, Termination};
use crate::error::Result;
use crate::linalg::{clamp_spectrum, largest_singular_value, top_singular_triplet, ComplexMatrix, QuantumState};
use crate::random::{random_observable_matrix, seeded};
use crate::scenario::Regime;
use crate::BellScenario;

/// Step sizes below this end the run.
const MIN_STEP: f64 = 1e-12;
/// Central-difference width for [`numerical_gradient`].
pub const FINITE_DIFFERENCE_STEP: f64 = 1e-5;

/// Observables `[a1, a2, b1, b2]` on one shared space.
pub type Quadruple = [ComplexMatrix; 4];

/// `a1b1 + a2b1 + a1b2 − a2b2`.
pub fn shared_bell_operator(x: &Quadruple) -> ComplexMatrix {
    let [a1, a2, b1, b2] = x;
    &(a1 * &(b1 + b2)) + &(a2 * &(b1 - b2))
}

pub fn objective(x: &Quadruple) -> Result<f64> {
    largest_singular_value(&shared_bell_operator(x))
}

fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    // u·v†
    let n = u.len();
    let data = (0..n * n).map(|k| u[k / n] * v[k % n].conj()).collect();
    ComplexMatrix::new(n, n, data).expect("square outer product")
}

/// Gradient of `σmax(B)` with respect to each observable, from the singular vectors.
pub fn analytic_gradient(x: &Quadruple) -> Result<(f64, [ComplexMatrix; 4])> {
    let [a1, a2, b1, b2] = x;
    let (sigma, u, v) = top_singular_triplet(&shared_bell_operator(x))?;
    let vu = outer(&v, &u);
    // Re tr(δx·M) over Hermitian δx is maximized along the Hermitian part of M
    let grad = |m: ComplexMatrix| m.hermitian_part();
    let plus_b = b1 + b2;
    let minus_b = b1 - b2;
    let plus_a = a1 + a2;
    let minus_a = a1 - a2;
    Ok((
        sigma,
        [
            grad(&plus_b * &vu),
            grad(&minus_b * &vu),
            grad(&vu * &plus_a),
            grad(&vu * &minus_a),
        ],
    ))
}

/// Orthonormal basis of `d×d` Hermitian matrices under `⟨X, Y⟩ = Re tr(X·Y)`.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(d * d);
    let unit = |i: usize, j: usize, z: Complex64| {
        let mut m = ComplexMatrix::zeros(d, d).expect("valid dim");
        m.set(i, j, z);
        m
    };
    for i in 0..d {
        basis.push(unit(i, i, Complex64::new(1.0, 0.0)));
    }
    for i in 0..d {
        for j in i + 1..d {
            basis.push(&unit(i, j, Complex64::new(h, 0.0)) + &unit(j, i, Complex64::new(h, 0.0)));
            basis.push(&unit(i, j, Complex64::new(0.0, -h)) + &unit(j, i, Complex64::new(0.0, h)));
        }
    }
    basis
}

/// Central-difference gradient over [`hermitian_basis`], no projection.
pub fn numerical_gradient(x: &Quadruple, h: f64) -> Result<[ComplexMatrix; 4]> {
    let d = x[0].rows();
    let basis = hermitian_basis(d);
    let mut out: [ComplexMatrix; 4] = std::array::from_fn(|_| ComplexMatrix::zeros(d, d).expect("valid dim"));
    for (k, slot) in out.iter_mut().enumerate() {
        for e in &basis {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[k] = &x[k] + &e.scale_real(h);
            minus[k] = &x[k] - &e.scale_real(h);
            let slope = (objective(&plus)? - objective(&minus)?) / (2.0 * h);
            *slot = &*slot + &e.scale_real(slope);
        }
    }
    Ok(out)
}

/// Best projected-gradient value over `cfg.restarts` seeded random starts.
pub fn nonlocal_max(cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    cfg.validate_nonlocal()?;
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded(cfg.restart_seed(i));
            let d = cfg.dimension;
            let mut draw = || random_observable_matrix(&mut rng, d, cfg.value_range);
            let start = [draw()?, draw()?, draw()?, draw()?];
            ascent_from(start, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    merge_restarts(Regime::Nonlocal, cfg, outcomes)
}

/// One projected-gradient run from a feasible start.
pub fn ascent_from(start: Quadruple, cfg: &OptimizerConfig) -> Result<RestartOutcome> {
    let (lo, hi) = (cfg.value_range.lo(), cfg.value_range.hi());
    let mut x = start;
    let mut step = cfg.step_size;
    let mut trace = Vec::new();
    let mut accepted_any = false;
    let mut termination = Termination::MaxIterations;

    let (mut value, mut grad) = analytic_gradient(&x)?;
    trace.push(value);
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        iterations += 1;
        let mut proposal = x.clone();
        for (p, g) in proposal.iter_mut().zip(grad.iter()) {
            *p = clamp_spectrum(&(&*p + &g.scale_real(step)), lo, hi)?;
        }
        let (next, next_grad) = analytic_gradient(&proposal)?;
        if next > value {
            let improvement = next - value;
            x = proposal;
            value = next;
            grad = next_grad;
            accepted_any = true;
            trace.push(value);
            if improvement < cfg.convergence_eps {
                termination = Termination::Converged;
                break;
            }
            step = (step * 2.0).min(cfg.step_size);
        } else {
            step *= 0.5;
            if step < MIN_STEP {
                termination = if accepted_any {
                    Termination::Converged
                } else {
                    Termination::Stationary
                };
                break;
            }
        }
    }

    let (_, _, v) = top_singular_triplet(&shared_bell_operator(&x))?;
    let scenario = BellScenario::shared(x, cfg.value_range)?;
    Ok(RestartOutcome {
        value,
        scenario,
        state: QuantumState::normalized(v)?,
        iterations,
        termination,
        trace,
    })
}

/// Best nonlocal value found in each dimension, and whether it reaches `target` within `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionSearchRow {
    pub dimension: usize,
    pub best_value: f64,
    pub reached: bool,
}

pub fn nonlocal_dimension_search(
    cfg: &OptimizerConfig,
    dimensions: impl IntoIterator<Item = usize>,
    target: f64,
    tol: f64,
) -> Result<Vec<DimensionSearchRow>> {
    dimensions
        .into_iter()
        .map(|d| {
            let r = nonlocal_max(&cfg.with_dimension(d))?;
            Ok(DimensionSearchRow {
                dimension: d,
                best_value: r.best_value,
                reached: (r.best_value - target).abs() <= tol,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gaussian_hermitian;
    use crate::scenario::{bell_operator, ValueRange};

    #[test]
    fn basis_is_orthonormal() {
        let b = hermitian_basis(3);
        assert_eq!(b.len(), 9);
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let ip = (x * y).trace().re;
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn analytic_gradient_matches_finite_differences() {
        let mut rng = seeded(5);
        for d in [2, 3] {
            for _ in 0..5 {
                let x: Quadruple = std::array::from_fn(|_| gaussian_hermitian(&mut rng, d).unwrap());
                let (_, analytic) = analytic_gradient(&x).unwrap();
                let numeric = numerical_gradient(&x, FINITE_DIFFERENCE_STEP).unwrap();
                for k in 0..4 {
                    let diff = analytic[k].max_abs_diff(&numeric[k]);
                    assert!(diff < 1e-6, "d={d} k={k} diff={diff}");
                }
            }
        }
    }

    #[test]
    fn shared_operator_matches_scenario_operator() {
        let mut rng = seeded(8);
        let x: Quadruple =
            std::array::from_fn(|_| random_observable_matrix(&mut rng, 2, ValueRange::symmetric()).unwrap());
        let s = BellScenario::shared(x.clone(), ValueRange::symmetric()).unwrap();
        assert!(shared_bell_operator(&x).max_abs_diff(&bell_operator(&s)) < 1e-14);
    }

    #[test]
    fn degenerate_sigma_x_start() {
        let x = ComplexMatrix::pauli_x();
        let start: Quadruple = [x.clone(), x.clone(), x.clone(), x];
        assert!((objective(&start).unwrap() - 2.0).abs() < 1e-14);
        let r = nonlocal_max(&OptimizerConfig::nonlocal().with_restarts(10)).unwrap();
        assert!(r.best_value > 2.5, "{}", r.best_value);
    }

    #[test]
    fn ascent_is_monotone() {
        let cfg = OptimizerConfig::nonlocal();
        let mut rng = seeded(21);
        let start: Quadruple =
            std::array::from_fn(|_| random_observable_matrix(&mut rng, 2, ValueRange::symmetric()).unwrap());
        let run = ascent_from(start, &cfg).unwrap();
        assert!(run.trace.windows(2).all(|w| w[1] > w[0]));
        assert!(run.value <= 4.0);
    }
}
