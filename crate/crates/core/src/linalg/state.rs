use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, tensor_product, ComplexMatrix};
use crate::tolerance::{TAU_HERM, TAU_STATE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    PureVector,
    DensityMatrix,
}

/// A normalized pure state (column vector) or a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    kind: StateKind,
    data: ComplexMatrix,
}

impl QuantumState {
    /// Pure state from amplitudes; the vector must already have unit norm.
    pub fn pure(amplitudes: Vec<Complex64>) -> Result<Self> {
        let data = ComplexMatrix::column(amplitudes)?;
        let norm = data.frobenius_norm();
        if (norm - 1.0).abs() > TAU_STATE {
            return Err(Error::State(format!("pure state has norm {norm}, expected 1")));
        }
        Ok(Self {
            kind: StateKind::PureVector,
            data,
        })
    }

    /// Pure state from arbitrary non-zero amplitudes, rescaled to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::State("cannot normalize a zero vector".into()));
        }
        let data = ComplexMatrix::column(amplitudes.into_iter().map(|z| z / norm).collect())?;
        Ok(Self {
            kind: StateKind::PureVector,
            data,
        })
    }

    pub fn density(rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::Shape("density matrix must be square".into()));
        }
        let deviation = rho.hermitian_deviation();
        if deviation > TAU_STATE {
            return Err(Error::State(format!("density matrix not Hermitian ({deviation:.3e})")));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TAU_STATE || tr.im.abs() > TAU_STATE {
            return Err(Error::State(format!("density matrix has trace {tr}, expected 1")));
        }
        let min = hermitian_eigen(&rho)?.min();
        if min < -TAU_STATE {
            return Err(Error::State(format!(
                "density matrix not positive semidefinite (eigenvalue {min})"
            )));
        }
        Ok(Self {
            kind: StateKind::DensityMatrix,
            data: rho,
        })
    }

    /// Computational basis vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::State(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        Self::pure(v)
    }

    /// `(|00⟩ + |11⟩)/√2`, equally polarized photon pair `(|HH⟩ + |VV⟩)/√2`.
    pub fn phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        Self::pure(vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)]).expect("unit norm")
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::density(ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64))
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    /// Column vector for pure states, square matrix for density matrices.
    pub fn data(&self) -> &ComplexMatrix {
        &self.data
    }

    pub fn amplitudes(&self) -> Option<Vec<Complex64>> {
        match self.kind {
            StateKind::PureVector => Some(self.data.column_vec(0)),
            StateKind::DensityMatrix => None,
        }
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        match self.kind {
            StateKind::PureVector => &self.data * &self.data.adjoint(),
            StateKind::DensityMatrix => self.data.clone(),
        }
    }

    /// Product state `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        match (self.kind, other.kind) {
            (StateKind::PureVector, StateKind::PureVector) => Ok(Self {
                kind: StateKind::PureVector,
                data: tensor_product(&self.data, &other.data)?,
            }),
            _ => Ok(Self {
                kind: StateKind::DensityMatrix,
                data: tensor_product(&self.density_matrix(), &other.density_matrix())?,
            }),
        }
    }
}

/// `⟨ψ|op|ψ⟩` or `tr(ρ·op)` for a Hermitian operator.
pub fn expectation(state: &QuantumState, op: &ComplexMatrix) -> Result<f64> {
    let deviation = op.hermitian_deviation();
    if deviation > TAU_HERM {
        return Err(Error::NotHermitian { deviation });
    }
    if op.rows() != state.dim() {
        return Err(Error::Shape(format!(
            "operator of dimension {} applied to state of dimension {}",
            op.rows(),
            state.dim()
        )));
    }
    let value = raw_expectation(state, op);
    if value.im.abs() > TAU_HERM * op.max_abs().max(1.0) {
        return Err(Error::NotHermitian {
            deviation: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Complex `⟨ψ|op|ψ⟩` / `tr(ρ·op)` without checks; dimensions must match.
pub(crate) fn raw_expectation(state: &QuantumState, op: &ComplexMatrix) -> Complex64 {
    let n = op.rows();
    match state.kind {
        StateKind::PureVector => {
            let psi = state.data.entries();
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let row: Complex64 = (0..n).map(|j| op.get(i, j) * psi[j]).sum();
                acc += psi[i].conj() * row;
            }
            acc
        }
        StateKind::DensityMatrix => {
            let rho = &state.data;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    acc += rho.get(i, j) * op.get(j, i);
                }
            }
            acc
        }
    }
}
