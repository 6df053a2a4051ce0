use bellbound::linalg::ComplexMatrix;
use bellbound::random::{random_density_matrix, random_observable_matrix, random_pure_state, seeded};
use bellbound::scenario::{
    bell_operator, classify, correlation_table, evaluate, swap_assumption_delta, BellScenario, CorrelationTable,
    Regime, ValueRange,
};
use bellbound::QuantumState;
use proptest::prelude::*;
use rand::Rng;

fn random_scenario(rng: &mut impl Rng, shared: bool, range: ValueRange) -> BellScenario {
    if shared {
        let d = rng.gen_range(2..=4);
        let ops = std::array::from_fn(|_| random_observable_matrix(rng, d, range).unwrap());
        BellScenario::shared(ops, range).unwrap()
    } else {
        let da = rng.gen_range(2..=3);
        let db = rng.gen_range(2..=3);
        let a = std::array::from_fn(|_| random_observable_matrix(rng, da, range).unwrap());
        let b = std::array::from_fn(|_| random_observable_matrix(rng, db, range).unwrap());
        BellScenario::tensor(a, b, range).unwrap()
    }
}

#[test]
fn expectation_bounded_by_magnitude_bounded_by_four() {
    let mut rng = seeded(4);
    for i in 0..10_000 {
        let range = if i % 5 == 0 {
            ValueRange::unit()
        } else {
            ValueRange::symmetric()
        };
        let s = random_scenario(&mut rng, i % 2 == 0, range);
        let state: QuantumState = if i % 3 == 0 {
            random_density_matrix(&mut rng, s.dim()).unwrap()
        } else {
            random_pure_state(&mut rng, s.dim()).unwrap()
        };
        let e = evaluate(&s, &state).unwrap();
        assert!(e.expectation.abs() <= e.magnitude + 1e-9, "draw {i}: {e:?}");
        assert!(e.magnitude <= 4.0 + 1e-9, "draw {i}: {e:?}");
    }
}

#[test]
fn tensor_bell_operator_is_hermitian_and_never_nonlocal() {
    let mut rng = seeded(5);
    for _ in 0..500 {
        let s = random_scenario(&mut rng, false, ValueRange::symmetric());
        assert!(bell_operator(&s).is_hermitian(1e-10));
        let c = classify(&s);
        assert_ne!(c.regime, Regime::Nonlocal);
        assert!(c.witness.iter().filter(|w| w.cross_site).all(|w| w.norm == 0.0));
    }
}

#[test]
fn expected_bounds_are_exact() {
    let mut rng = seeded(6);
    for i in 0..200 {
        let s = random_scenario(&mut rng, i % 2 == 0, ValueRange::symmetric());
        let c = classify(&s);
        let allowed = [2.0, 2.0 * 2f64.sqrt(), 2.0 * 3f64.sqrt()];
        assert!(allowed.contains(&c.expected_bound));
        assert_eq!(c.expected_bound, c.regime.expected_bound());
    }
}

#[test]
fn quantum_table_fails_the_swap_assumption() {
    let s = BellScenario::optimal_chsh();
    let table = correlation_table(&s, &QuantumState::phi_plus()).unwrap();
    let d = table.swap_delta().unwrap();
    assert!((d - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
}

#[test]
fn commuting_diagonal_scenario() {
    let d = |v: &[f64]| ComplexMatrix::from_diagonal(v).unwrap();
    let s = BellScenario::shared(
        [
            d(&[1.0, 0.0, -1.0]),
            d(&[0.2, 0.3, 1.0]),
            d(&[-1.0, -1.0, 1.0]),
            d(&[0.0, 0.5, 0.5]),
        ],
        ValueRange::symmetric(),
    )
    .unwrap();
    assert_eq!(classify(&s).regime, Regime::Classical);
}

proptest! {
    #[test]
    fn swap_delta_is_invariant_under_relabeling_a(e in prop::array::uniform4(-1.0f64..=1.0)) {
        let t = CorrelationTable::new(e[0], e[1], e[2], e[3]);
        let s = t.swap_a();
        prop_assert!((t.swap_delta().unwrap() - s.swap_delta().unwrap()).abs() < 1e-15);
        // only the b2 column matters
        let other = CorrelationTable::new(-e[1], e[0], e[2], e[3]);
        prop_assert!((t.swap_delta().unwrap() - other.swap_delta().unwrap()).abs() < 1e-15);
        prop_assert!((t.swap_delta().unwrap() - 2.0 * (e[2] - e[3]).abs()).abs() < 1e-15);
    }

    #[test]
    fn constant_tables_satisfy_the_assumption(c in -1.0f64..=1.0) {
        prop_assert_eq!(swap_assumption_delta(c, c, c, c).unwrap(), 0.0);
    }
}
