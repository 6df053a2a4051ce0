use crate::error::{Error, Result};
use crate::linalg::{
    expectation, hermitian_eigen, raw_expectation, tensor_product, top_singular_triplet, ComplexMatrix, QuantumState,
};
use crate::scenario::{Observable, Site, ValueRange};
use crate::tolerance::{SITE_DIMENSION_CAP, TAU_EQUALITY_GAP};

/// How the four observables are placed in the Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// `a_j` acts as `a_j ⊗ I`, `b_k` as `I ⊗ b_k` on `H_a ⊗ H_b`.
    TensorEmbedded,
    /// All four act on one common space and are multiplied directly.
    SharedSpace,
}

/// Four observables, their placement and the value convention.
#[derive(Debug, Clone, PartialEq)]
pub struct BellScenario {
    a1: Observable,
    a2: Observable,
    b1: Observable,
    b2: Observable,
    embedding: Embedding,
    value_range: ValueRange,
}

/// Validate four observables into a scenario.
pub fn build_scenario(
    a1: Observable,
    a2: Observable,
    b1: Observable,
    b2: Observable,
    embedding: Embedding,
    value_range: ValueRange,
) -> Result<BellScenario> {
    for o in [&a1, &a2, &b1, &b2] {
        if !o.matrix().is_square() {
            return Err(Error::Shape(format!("observable {} is not square", o.label())));
        }
        o.check_range(value_range)?;
    }
    match embedding {
        Embedding::TensorEmbedded => {
            for o in [&a1, &a2] {
                if o.site() != Site::ArmA {
                    return Err(Error::Shape(format!("observable {} must sit on arm A", o.label())));
                }
            }
            for o in [&b1, &b2] {
                if o.site() != Site::ArmB {
                    return Err(Error::Shape(format!("observable {} must sit on arm B", o.label())));
                }
            }
            if a1.dim() != a2.dim() || b1.dim() != b2.dim() {
                return Err(Error::Shape(format!(
                    "per-site dimensions differ: a = ({}, {}), b = ({}, {})",
                    a1.dim(),
                    a2.dim(),
                    b1.dim(),
                    b2.dim()
                )));
            }
            if a1.dim() > SITE_DIMENSION_CAP || b1.dim() > SITE_DIMENSION_CAP {
                return Err(Error::Size {
                    rows: a1.dim(),
                    cols: b1.dim(),
                    cap: SITE_DIMENSION_CAP,
                });
            }
        }
        Embedding::SharedSpace => {
            let d = a1.dim();
            if [&a2, &b1, &b2].iter().any(|o| o.dim() != d) {
                return Err(Error::Shape(format!(
                    "shared-space observables need one common dimension, got ({}, {}, {}, {})",
                    a1.dim(),
                    a2.dim(),
                    b1.dim(),
                    b2.dim()
                )));
            }
        }
    }
    Ok(BellScenario {
        a1,
        a2,
        b1,
        b2,
        embedding,
        value_range,
    })
}

impl BellScenario {
    /// Tensor-embedded scenario from bare matrices with sites and labels filled in.
    pub fn tensor(a: [ComplexMatrix; 2], b: [ComplexMatrix; 2], value_range: ValueRange) -> Result<Self> {
        let [a1, a2] = a;
        let [b1, b2] = b;
        build_scenario(
            Observable::new(a1, Site::ArmA, "a1")?,
            Observable::new(a2, Site::ArmA, "a2")?,
            Observable::new(b1, Site::ArmB, "b1")?,
            Observable::new(b2, Site::ArmB, "b2")?,
            Embedding::TensorEmbedded,
            value_range,
        )
    }

    /// Shared-space scenario from bare matrices.
    pub fn shared(ops: [ComplexMatrix; 4], value_range: ValueRange) -> Result<Self> {
        let [a1, a2, b1, b2] = ops;
        build_scenario(
            Observable::new(a1, Site::Shared, "a1")?,
            Observable::new(a2, Site::Shared, "a2")?,
            Observable::new(b1, Site::Shared, "b1")?,
            Observable::new(b2, Site::Shared, "b2")?,
            Embedding::SharedSpace,
            value_range,
        )
    }

    /// The textbook CHSH settings `a = (σz, σx)`, `b = ((σz ± σx)/√2)` on two qubits.
    pub fn optimal_chsh() -> Self {
        let z = ComplexMatrix::pauli_z();
        let x = ComplexMatrix::pauli_x();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b1 = (&z + &x).scale_real(h);
        let b2 = (&z - &x).scale_real(h);
        Self::tensor([z, x], [b1, b2], ValueRange::symmetric()).expect("feasible settings")
    }

    pub fn observables(&self) -> [&Observable; 4] {
        [&self.a1, &self.a2, &self.b1, &self.b2]
    }

    pub fn a1(&self) -> &Observable {
        &self.a1
    }

    pub fn a2(&self) -> &Observable {
        &self.a2
    }

    pub fn b1(&self) -> &Observable {
        &self.b1
    }

    pub fn b2(&self) -> &Observable {
        &self.b2
    }

    pub fn embedding(&self) -> Embedding {
        self.embedding
    }

    pub fn value_range(&self) -> ValueRange {
        self.value_range
    }

    /// Dimension of the space the Bell operator acts on.
    pub fn dim(&self) -> usize {
        match self.embedding {
            Embedding::TensorEmbedded => self.a1.dim() * self.b1.dim(),
            Embedding::SharedSpace => self.a1.dim(),
        }
    }

    /// The four observables as operators on the full space, in order `a1, a2, b1, b2`.
    pub fn embedded(&self) -> [ComplexMatrix; 4] {
        match self.embedding {
            Embedding::TensorEmbedded => {
                let ia = ComplexMatrix::identity(self.a1.dim()).expect("valid dim");
                let ib = ComplexMatrix::identity(self.b1.dim()).expect("valid dim");
                let lift_a = |o: &Observable| tensor_product(o.matrix(), &ib).expect("within cap");
                let lift_b = |o: &Observable| tensor_product(&ia, o.matrix()).expect("within cap");
                [lift_a(&self.a1), lift_a(&self.a2), lift_b(&self.b1), lift_b(&self.b2)]
            }
            Embedding::SharedSpace => [
                self.a1.matrix().clone(),
                self.a2.matrix().clone(),
                self.b1.matrix().clone(),
                self.b2.matrix().clone(),
            ],
        }
    }

    /// The measured product `a_j b_k` as an operator on the full space.
    fn product(&self, a: &Observable, b: &Observable) -> ComplexMatrix {
        match self.embedding {
            Embedding::TensorEmbedded => tensor_product(a.matrix(), b.matrix()).expect("within cap"),
            Embedding::SharedSpace => a.matrix() * b.matrix(),
        }
    }
}

/// `B = a1b1 + a2b1 + a1b2 − a2b2`.
///
/// Tensor-embedded scenarios give a Hermitian operator built from `a_j ⊗ b_k`;
/// shared-space scenarios use plain matrix products and are generally not
/// Hermitian.
pub fn bell_operator(s: &BellScenario) -> ComplexMatrix {
    let p11 = s.product(&s.a1, &s.b1);
    let p21 = s.product(&s.a2, &s.b1);
    let p12 = s.product(&s.a1, &s.b2);
    let p22 = s.product(&s.a2, &s.b2);
    let b = &(&(&p11 + &p21) + &p12) - &p22;
    match s.embedding {
        Embedding::TensorEmbedded => b.hermitian_part(),
        Embedding::SharedSpace => b,
    }
}

fn check_state(s: &BellScenario, state: &QuantumState) -> Result<()> {
    if state.dim() != s.dim() {
        return Err(Error::Shape(format!(
            "state of dimension {} for a scenario of dimension {}",
            state.dim(),
            s.dim()
        )));
    }
    Ok(())
}

/// `⟨B⟩`; for shared-space scenarios, the expectation of the Hermitian part `(B + B†)/2`.
pub fn bell_expectation(s: &BellScenario, state: &QuantumState) -> Result<f64> {
    check_state(s, state)?;
    let b = bell_operator(s);
    Ok(raw_expectation(state, &b).re)
}

/// `√⟨B†B⟩`.
pub fn magnitude_bound(s: &BellScenario, state: &QuantumState) -> Result<f64> {
    check_state(s, state)?;
    let b = bell_operator(s);
    let btb = (&b.adjoint() * &b).hermitian_part();
    Ok(expectation(state, &btb)?.max(0.0).sqrt())
}

/// Expectation and magnitude of one scenario/state pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellEvaluation {
    pub expectation: f64,
    pub magnitude: f64,
    /// `√⟨B†B⟩ − |⟨B⟩|` exceeds the equality tolerance, i.e. `⟨B⟩ = √⟨B†B⟩` fails here.
    pub equality_gap: bool,
}

pub fn evaluate(s: &BellScenario, state: &QuantumState) -> Result<BellEvaluation> {
    let expectation = bell_expectation(s, state)?;
    let magnitude = magnitude_bound(s, state)?;
    Ok(BellEvaluation {
        expectation,
        magnitude,
        equality_gap: magnitude - expectation.abs() > TAU_EQUALITY_GAP,
    })
}

/// State maximizing the reported value: the top eigenvector of `B` for
/// tensor-embedded scenarios, the top right singular vector for shared ones.
pub fn optimal_state(s: &BellScenario) -> Result<QuantumState> {
    let b = bell_operator(s);
    let v = match s.embedding {
        Embedding::TensorEmbedded => hermitian_eigen(&b)?.eigenvector(0),
        Embedding::SharedSpace => top_singular_triplet(&b)?.2,
    };
    QuantumState::normalized(v)
}

/// Correlations `E_jk = ⟨a_j b_k⟩` of one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTable {
    pub e11: f64,
    pub e21: f64,
    pub e12: f64,
    pub e22: f64,
}

impl CorrelationTable {
    pub fn new(e11: f64, e21: f64, e12: f64, e22: f64) -> Self {
        Self { e11, e21, e12, e22 }
    }

    /// `E11 + E21 + E12 − E22`.
    pub fn chsh(&self) -> f64 {
        self.e11 + self.e21 + self.e12 - self.e22
    }

    /// The table after interchanging `a1 ↔ a2`.
    pub fn swap_a(&self) -> Self {
        Self::new(self.e21, self.e11, self.e22, self.e12)
    }
}

/// Per-pair expectations; shared-space products use their Hermitian parts.
pub fn correlation_table(s: &BellScenario, state: &QuantumState) -> Result<CorrelationTable> {
    check_state(s, state)?;
    let e = |a: &Observable, b: &Observable| raw_expectation(state, &s.product(a, b)).re;
    Ok(CorrelationTable::new(
        e(&s.a1, &s.b1),
        e(&s.a2, &s.b1),
        e(&s.a1, &s.b2),
        e(&s.a2, &s.b2),
    ))
}
