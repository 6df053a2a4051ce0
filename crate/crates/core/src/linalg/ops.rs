use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigen_with, ComplexMatrix};
use crate::tolerance::{Tolerances, DIMENSION_CAP};

/// Kronecker product; block `(i, j)` of the result is `lhs[i, j]·rhs`.
pub fn tensor_product(lhs: &ComplexMatrix, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (r1, c1) = lhs.shape();
    let (r2, c2) = rhs.shape();
    let (rows, cols) = (r1 * r2, c1 * c2);
    if rows > DIMENSION_CAP || cols > DIMENSION_CAP {
        return Err(Error::Size {
            rows,
            cols,
            cap: DIMENSION_CAP,
        });
    }
    let mut out = ComplexMatrix::zeros(rows, cols)?;
    for i in 0..r1 {
        for j in 0..c1 {
            let a = lhs.get(i, j);
            for k in 0..r2 {
                for l in 0..c2 {
                    out.set(i * r2 + k, j * c2 + l, a * rhs.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// `xy − yx`.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::Shape(format!(
            "commutator needs equal square matrices, got {:?} and {:?}",
            x.shape(),
            y.shape()
        )));
    }
    Ok(&x.matmul(y)? - &y.matmul(x)?)
}

/// `√λmax(m†m)`.
pub fn largest_singular_value(m: &ComplexMatrix) -> Result<f64> {
    let gram = gram_matrix(m);
    Ok(hermitian_eigen(&gram)?.max().max(0.0).sqrt())
}

/// Top singular triplet `(σ, u, v)` with `m·v = σ·u`.
///
/// When `σ` is zero, `u` is the first basis vector.
pub fn top_singular_triplet(m: &ComplexMatrix) -> Result<(f64, Vec<Complex64>, Vec<Complex64>)> {
    let gram = gram_matrix(m);
    let spectrum = hermitian_eigen(&gram)?;
    let sigma = spectrum.max().max(0.0).sqrt();
    let v = spectrum.eigenvector(0);
    let mv: Vec<Complex64> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) * v[j]).sum())
        .collect();
    let norm = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let u = if norm > 1e-300 {
        mv.iter().map(|z| z / norm).collect()
    } else {
        let mut e = vec![Complex64::new(0.0, 0.0); m.rows()];
        e[0] = Complex64::new(1.0, 0.0);
        e
    };
    Ok((sigma, u, v))
}

// m†m, symmetrized so rounding never trips the Hermitian check
fn gram_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    (&m.adjoint() * m).hermitian_part()
}

/// Replace each eigenvalue `λ` of a Hermitian matrix by `f(λ)`.
pub fn map_spectrum(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eigen(m)?.reconstruct_with(f).hermitian_part())
}

/// Project a Hermitian matrix onto the set with spectrum in `[lo, hi]`.
pub fn clamp_spectrum(m: &ComplexMatrix, lo: f64, hi: f64) -> Result<ComplexMatrix> {
    clamp_spectrum_with(m, lo, hi, &Tolerances::default())
}

pub fn clamp_spectrum_with(m: &ComplexMatrix, lo: f64, hi: f64, tol: &Tolerances) -> Result<ComplexMatrix> {
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::Range(format!("empty clamp interval [{lo}, {hi}]")));
    }
    let spectrum = hermitian_eigen_with(m, tol)?;
    if spectrum.min() >= lo && spectrum.max() <= hi {
        return Ok(m.hermitian_part());
    }
    Ok(spectrum.reconstruct_with(|l| l.clamp(lo, hi)).hermitian_part())
}
