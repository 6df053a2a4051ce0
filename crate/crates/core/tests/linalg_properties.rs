use bellbound::linalg::{
    clamp_spectrum, commutator, expectation, hermitian_eigen, largest_singular_value, tensor_product, ComplexMatrix,
};
use bellbound::random::{
    gaussian_hermitian, random_density_matrix, random_observable_matrix, random_pure_state, seeded,
};
use bellbound::scenario::ValueRange;
use bellbound::tolerance::{TAU_RECON, TAU_UNITARY};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(
            rows,
            cols,
            v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )
        .unwrap()
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim, dim).prop_map(|m| m.hermitian_part())
}

proptest! {
    #[test]
    fn tensor_mixed_product(a in matrix(2, 3), c in matrix(3, 2), b in matrix(2, 2), d in matrix(2, 2)) {
        let lhs = &tensor_product(&a, &b).unwrap() * &tensor_product(&c, &d).unwrap();
        let rhs = tensor_product(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn tensor_of_hermitians_is_hermitian(a in hermitian(3), b in hermitian(2)) {
        prop_assert!(tensor_product(&a, &b).unwrap().is_hermitian(1e-14));
    }

    #[test]
    fn commutator_antisymmetric(x in matrix(3, 3), y in matrix(3, 3)) {
        let xy = commutator(&x, &y).unwrap();
        let yx = commutator(&y, &x).unwrap();
        prop_assert!((&xy + &yx).max_abs() < 1e-13);
    }

    #[test]
    fn singular_value_matches_eigen_for_hermitian(m in hermitian(4)) {
        let s = hermitian_eigen(&m).unwrap();
        let max_abs = s.max().abs().max(s.min().abs());
        prop_assert!((largest_singular_value(&m).unwrap() - max_abs).abs() < 1e-9);
    }

    #[test]
    fn clamp_idempotent(m in hermitian(3)) {
        let once = clamp_spectrum(&m, -1.0, 1.0).unwrap();
        let twice = clamp_spectrum(&once, -1.0, 1.0).unwrap();
        prop_assert!(once.max_abs_diff(&twice) < 1e-12);
        let s = hermitian_eigen(&once).unwrap();
        prop_assert!(s.max() <= 1.0 + 1e-12 && s.min() >= -1.0 - 1e-12);
    }
}

#[test]
fn eigensolver_residuals_on_random_hermitians() {
    let mut rng = seeded(2024);
    let mut worst_recon = 0.0f64;
    let mut worst_unitary = 0.0f64;
    for _ in 0..1000 {
        let dim = rng.gen_range(2..=16);
        let m = gaussian_hermitian(&mut rng, dim).unwrap();
        let s = hermitian_eigen(&m).unwrap();
        assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        worst_recon = worst_recon.max(s.reconstruction_residual(&m));
        worst_unitary = worst_unitary.max(s.unitarity_residual());
    }
    assert!(worst_recon <= TAU_RECON, "reconstruction {worst_recon:e}");
    assert!(worst_unitary <= TAU_UNITARY, "unitarity {worst_unitary:e}");
}

#[test]
fn eigensolver_handles_degenerate_spectra() {
    let mut rng = seeded(7);
    for dim in [2, 4, 6, 9] {
        // random unitary conjugation of a spectrum with repeated values
        let q = hermitian_eigen(&gaussian_hermitian(&mut rng, dim).unwrap())
            .unwrap()
            .eigenvectors;
        let diag: Vec<f64> = (0..dim).map(|i| (i / 2) as f64 - 1.0).collect();
        let m = (&(&q * &ComplexMatrix::from_diagonal(&diag).unwrap()) * &q.adjoint()).hermitian_part();
        let s = hermitian_eigen(&m).unwrap();
        assert!(s.reconstruction_residual(&m) < 1e-10);
        assert!(s.unitarity_residual() < 1e-10);
    }
}

#[test]
fn clamp_is_noop_when_feasible() {
    let mut rng = seeded(8);
    for _ in 0..100 {
        let m = random_observable_matrix(&mut rng, 3, ValueRange::symmetric()).unwrap();
        let c = clamp_spectrum(&m, -1.0, 1.0).unwrap();
        assert!(c.max_abs_diff(&m) < 1e-12);
    }
}

#[test]
fn expectations_of_feasible_observables_are_bounded() {
    let mut rng = seeded(9);
    for i in 0..2000 {
        let dim = rng.gen_range(2..=6);
        let op = random_observable_matrix(&mut rng, dim, ValueRange::symmetric()).unwrap();
        let state = if i % 2 == 0 {
            random_pure_state(&mut rng, dim).unwrap()
        } else {
            random_density_matrix(&mut rng, dim).unwrap()
        };
        let e = expectation(&state, &op).unwrap();
        assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&e));
    }
}
