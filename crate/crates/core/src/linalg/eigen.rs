//! Hermitian eigendecomposition.
//!
//! An `n×n` Hermitian matrix `H = A + iB` is mapped to the real symmetric
//! `2n×2n` matrix `[[A, −B], [B, A]]`, which is diagonalized with cyclic
//! Jacobi rotations. Every eigenvalue of `H` appears twice in the embedding;
//! the real eigenvectors `(x; y)` of one doubled eigenvalue span the complex
//! eigenspace through `x + iy`, so a pivoted complex Gram-Schmidt pass over
//! each cluster recovers an orthonormal complex basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance::Tolerances;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with the matching unitary eigenvector matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column_vec(k)
    }

    /// `V·diag(f(λ))·V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n).expect("valid spectrum dimension");
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &l) in mapped.iter().enumerate() {
                    acc += v.get(i, k) * v.get(j, k).conj() * l;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }

    /// `‖V·diag(λ)·V† − m‖_max`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        self.reconstruct().max_abs_diff(m)
    }

    /// `‖V†V − I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        let gram = &v.adjoint() * v;
        gram.max_abs_diff(&ComplexMatrix::identity(self.dim()).expect("valid dimension"))
    }
}

/// Eigendecomposition with the default tolerances.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_eigen_with(m, &Tolerances::default())
}

pub fn hermitian_eigen_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    if n == 1 {
        return Ok(Spectrum {
            eigenvalues: vec![m.get(0, 0).re],
            eigenvectors: ComplexMatrix::identity(1)?,
        });
    }

    let h = m.hermitian_part();
    let size = 2 * n;
    let mut a = vec![0.0; size * size];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * size + j] = z.re;
            a[(i + n) * size + (j + n)] = z.re;
            a[i * size + (j + n)] = -z.im;
            a[(i + n) * size + j] = z.im;
        }
    }
    let (values, vectors) = jacobi_symmetric(&mut a, size)?;

    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&p, &q| values[q].total_cmp(&values[p]));

    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let cluster_tol = 1e-9 * scale;

    let mut accepted: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < size {
        let mut end = start + 1;
        while end < size && values[order[end - 1]] - values[order[end]] <= cluster_tol {
            end += 1;
        }
        let mut candidates: Vec<Vec<Complex64>> = order[start..end]
            .iter()
            .map(|&k| {
                (0..n)
                    .map(|i| Complex64::new(vectors[i * size + k], vectors[(i + n) * size + k]))
                    .collect()
            })
            .collect();
        let wanted = (end - start).div_ceil(2);
        let base = accepted.len();
        for _ in 0..wanted {
            if accepted.len() == n {
                break;
            }
            // project every candidate against the accepted basis and take the largest residual
            let mut best: Option<(f64, Vec<Complex64>)> = None;
            for c in candidates.iter_mut() {
                for (_, q) in accepted.iter() {
                    let overlap: Complex64 = q.iter().zip(c.iter()).map(|(qi, ci)| qi.conj() * ci).sum();
                    c.iter_mut().zip(q).for_each(|(ci, qi)| *ci -= overlap * qi);
                }
                let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                    best = Some((norm, c.clone()));
                }
            }
            let (norm, mut v) = best.expect("non-empty cluster");
            if norm < 1e-6 {
                break;
            }
            v.iter_mut().for_each(|z| *z /= norm);
            let lambda = rayleigh_quotient(&h, &v);
            accepted.push((lambda, v));
        }
        if accepted.len() - base < wanted && accepted.len() < n {
            return Err(Error::Convergence {
                sweeps: MAX_SWEEPS,
                off_norm: f64::NAN,
            });
        }
        start = end;
    }
    if accepted.len() != n {
        return Err(Error::Convergence {
            sweeps: MAX_SWEEPS,
            off_norm: f64::NAN,
        });
    }

    // stable: ties keep extraction order
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&p, &q| accepted[q].0.total_cmp(&accepted[p].0));
    let eigenvalues = idx.iter().map(|&k| accepted[k].0).collect();
    let columns: Vec<Vec<Complex64>> = idx.iter().map(|&k| accepted[k].1.clone()).collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_columns(&columns)?,
    })
}

fn rayleigh_quotient(h: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, vi) in v.iter().enumerate() {
        let row: Complex64 = v.iter().enumerate().map(|(j, vj)| h.get(i, j) * vj).sum();
        acc += vi.conj() * row;
    }
    acc.re
}

/// Cyclic Jacobi on a dense row-major symmetric matrix. Returns the
/// eigenvalues (unsorted) and the orthogonal eigenvector matrix (columns).
fn jacobi_symmetric(a: &mut [f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = f64::EPSILON * total.max(f64::MIN_POSITIVE);

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    for _sweep in 0..MAX_SWEEPS {
        if off_norm(a) <= threshold {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((values, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::Convergence {
        sweeps: MAX_SWEEPS,
        off_norm: off_norm(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_spectra() {
        let s = hermitian_eigen(&ComplexMatrix::pauli_z()).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);

        for m in [ComplexMatrix::pauli_x(), ComplexMatrix::pauli_y()] {
            let s = hermitian_eigen(&m).unwrap();
            assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
            assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
            assert!(s.reconstruction_residual(&m) < 1e-12);
            assert!(s.unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn diagonal_sorted_descending() {
        let m = ComplexMatrix::from_diagonal(&[3.0, -0.5, 0.0]).unwrap();
        let s = hermitian_eigen(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![3.0, 0.0, -0.5]);
    }

    #[test]
    fn degenerate_identity() {
        let m = ComplexMatrix::identity(5).unwrap().scale_real(2.0);
        let s = hermitian_eigen(&m).unwrap();
        assert!(s.eigenvalues.iter().all(|&l| (l - 2.0).abs() < 1e-14));
        assert!(s.unitarity_residual() < 1e-12);
        assert!(s.reconstruction_residual(&m) < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let rect = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(hermitian_eigen(&rect), Err(Error::Shape(_))));
        let skew = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eigen(&skew), Err(Error::NotHermitian { .. })));
    }
}
