use crate::bounds::{OptimizationResult, Termination};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, QuantumState};
use crate::scenario::{Regime, ValueRange};
use crate::BellScenario;

/// `x1·y1 + x2·y1 + x1·y2 − x2·y2`.
pub fn chsh_form(x1: f64, x2: f64, y1: f64, y2: f64) -> f64 {
    x1 * y1 + x2 * y1 + x1 * y2 - x2 * y2
}

/// Exact classical maximum by enumerating the 16 endpoint assignments.
///
/// The form is bilinear, so its maximum over the box sits at a vertex. The
/// achieving assignment is returned as 1×1 observables.
pub fn classical_max(value_range: ValueRange) -> Result<OptimizationResult> {
    let ends = [value_range.hi(), value_range.lo()];
    let mut best = (f64::NEG_INFINITY, [0.0; 4]);
    for &x1 in &ends {
        for &x2 in &ends {
            for &y1 in &ends {
                for &y2 in &ends {
                    let v = chsh_form(x1, x2, y1, y2);
                    if v > best.0 {
                        best = (v, [x1, x2, y1, y2]);
                    }
                }
            }
        }
    }
    let [x1, x2, y1, y2] = best.1;
    let one = |x: f64| ComplexMatrix::from_diagonal(&[x]);
    let scenario = BellScenario::tensor([one(x1)?, one(x2)?], [one(y1)?, one(y2)?], value_range)?;
    Ok(OptimizationResult {
        regime: Regime::Classical,
        best_value: best.0,
        best_scenario: scenario,
        best_state: QuantumState::basis(1, 0)?,
        best_restart: 0,
        restarts: 1,
        iterations_total: 16,
        converged: true,
        termination: Termination::Converged,
        master_seed: 0,
        restart_values: vec![best.0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::bell_expectation;

    // independent oracle: 16-point grid written out directly from the box corners
    fn brute_force(lo: f64, hi: f64, arms_swapped: bool) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for mask in 0..16u32 {
            let pick = |bit: u32| if mask & (1 << bit) != 0 { hi } else { lo };
            let (x1, x2, y1, y2) = (pick(0), pick(1), pick(2), pick(3));
            let v = if arms_swapped {
                y1 * x1 + y2 * x1 + y1 * x2 - y2 * x2
            } else {
                x1 * y1 + x2 * y1 + x1 * y2 - x2 * y2
            };
            best = best.max(v);
        }
        best
    }

    #[test]
    fn examples() {
        let r = classical_max(ValueRange::symmetric()).unwrap();
        assert_eq!(r.best_value, 2.0);
        let diag: Vec<f64> = r
            .best_scenario
            .observables()
            .iter()
            .map(|o| o.matrix().get(0, 0).re)
            .collect();
        assert_eq!(diag, vec![1.0, 1.0, 1.0, 1.0]);

        let r = classical_max(ValueRange::unit()).unwrap();
        assert_eq!(r.best_value, 2.0);
        assert_eq!(brute_force(0.0, 1.0, false), 2.0);

        let r = classical_max(ValueRange::new(0.0, 0.0).unwrap()).unwrap();
        assert_eq!(r.best_value, 0.0);
    }

    #[test]
    fn achieving_assignment_evaluates_to_value() {
        for range in [ValueRange::symmetric(), ValueRange::unit()] {
            let r = classical_max(range).unwrap();
            let v = bell_expectation(&r.best_scenario, &r.best_state).unwrap();
            assert_eq!(v, r.best_value);
        }
    }

    #[test]
    fn arm_swap_invariance() {
        for (lo, hi) in [(-1.0, 1.0), (0.0, 1.0), (-0.3, 0.7), (-2.0, 0.5)] {
            let r = classical_max(ValueRange::new(lo, hi).unwrap()).unwrap();
            assert_eq!(r.best_value, brute_force(lo, hi, false));
            assert_eq!(r.best_value, brute_force(lo, hi, true));
        }
    }
}
