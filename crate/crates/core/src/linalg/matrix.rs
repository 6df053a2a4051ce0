use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::DIMENSION_CAP;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored in row-major order.
///
/// Dimensions are at least 1 and at most [`DIMENSION_CAP`] per axis. The
/// checked constructors reject non-finite entries; the arithmetic operators
/// panic on shape mismatch the way dense matrix libraries usually do, while
/// the named methods ([`ComplexMatrix::matmul`], [`commutator`]) return
/// shape errors instead.
///
/// [`commutator`]: crate::linalg::commutator
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::Shape(format!("dimensions must be positive, got {rows}x{cols}")));
    }
    if rows > DIMENSION_CAP || cols > DIMENSION_CAP {
        return Err(Error::Size {
            rows,
            cols,
            cap: DIMENSION_CAP,
        });
    }
    Ok(())
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dims(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: idx / cols,
                col: idx % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        Ok(m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::NonFinite { row: i, col: i });
            }
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Column vector with the given entries.
    pub fn column(entries: Vec<Complex64>) -> Result<Self> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    /// Matrix whose columns are the given equal-length vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols)?;
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Shape("columns have unequal lengths".into()));
            }
            for (i, &z) in c.iter().enumerate() {
                m.data[i * cols + j] = z;
            }
        }
        Ok(m)
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static shape")
    }

    pub fn pauli_y() -> Self {
        Self::new(
            2,
            2,
            vec![ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO],
        )
        .expect("static shape")
    }

    pub fn pauli_z() -> Self {
        Self::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static shape")
    }

    /// Spin observable `n·σ` along the Bloch direction (θ, φ) in radians.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let (nx, ny, nz) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
        Self::pauli_x()
            .scale_real(nx)
            .add(&Self::pauli_y().scale_real(ny))
            .add(&Self::pauli_z().scale_real(nz))
    }

    /// Projector onto linear polarization at angle `theta` (radians) in the H/V basis.
    pub fn polarization_projector(theta: f64) -> Self {
        let (c, s) = (theta.cos(), theta.sin());
        Self::from_real(2, 2, &[c * c, c * s, c * s, s * s]).expect("static shape")
    }

    /// Polarization observable `2·P(θ) − I`, with eigenvalue +1 for transmission.
    pub fn polarization_observable(theta: f64) -> Self {
        let (c2, s2) = ((2.0 * theta).cos(), (2.0 * theta).sin());
        Self::from_real(2, 2, &[c2, s2, s2, -c2]).expect("static shape")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn column_vec(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        out.rows = self.cols;
        out.cols = self.rows;
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = self.adjoint();
        out.data.iter_mut().for_each(|z| *z = z.conj());
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = vec![ZERO; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    fn zip_with(&self, rhs: &Self, op: &str, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix {op}: shape mismatch {:?} vs {:?}",
            self.shape(),
            rhs.shape()
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖m − m†‖_max`, or infinity for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(m + m†) / 2`. Panics on non-square input.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Max-entry distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, "add", |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix mul: shape mismatch")
    }
}

impl ComplexMatrix {
    /// Owned addition; see the `Add` impl for references.
    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(matches!(ComplexMatrix::zeros(0, 2), Err(Error::Shape(_))));
        assert!(matches!(ComplexMatrix::zeros(65, 1), Err(Error::Size { .. })));
        assert!(matches!(
            ComplexMatrix::from_real(1, 2, &[1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(ComplexMatrix::from_real(2, 2, &[1.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn adjoint_and_products() {
        let y = ComplexMatrix::pauli_y();
        assert_eq!(y.adjoint(), y);
        let yy = &y * &y;
        assert!(yy.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-15);
        let a = ComplexMatrix::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(a.adjoint().shape(), (3, 2));
        assert!(a.matmul(&a).is_err());
        let aat = a.matmul(&a.adjoint()).unwrap();
        assert_eq!(aat.get(0, 0).re, 14.0);
        assert_eq!(aat.get(0, 1).re, 32.0);
    }

    #[test]
    fn bloch_presets() {
        use std::f64::consts::FRAC_PI_2;
        assert!(ComplexMatrix::bloch(0.0, 0.0).max_abs_diff(&ComplexMatrix::pauli_z()) < 1e-15);
        assert!(ComplexMatrix::bloch(FRAC_PI_2, 0.0).max_abs_diff(&ComplexMatrix::pauli_x()) < 1e-15);
        assert!(ComplexMatrix::bloch(FRAC_PI_2, FRAC_PI_2).max_abs_diff(&ComplexMatrix::pauli_y()) < 1e-15);
        // polarization observable at θ is the Bloch vector at 2θ in the x-z plane
        let t = 0.3;
        let p = ComplexMatrix::polarization_observable(t);
        let b = ComplexMatrix::bloch(2.0 * t, 0.0);
        assert!(p.max_abs_diff(&b) < 1e-15);
    }
}
