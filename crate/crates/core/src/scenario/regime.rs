use std::fmt;

use crate::linalg::commutator;
use crate::scenario::BellScenario;
use crate::tolerance::TAU_COMMUTATOR;

/// Which operator pairs commute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// Every pair commutes.
    Classical,
    /// Cross-site pairs commute, at least one same-site pair does not.
    LocalHiddenVariable,
    /// Some cross-site pair does not commute.
    Nonlocal,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Classical, Regime::LocalHiddenVariable, Regime::Nonlocal];

    /// Limit of `⟨B⟩` associated with the regime: 2, 2√2 or 2√3.
    pub fn expected_bound(self) -> f64 {
        match self {
            Regime::Classical => 2.0,
            Regime::LocalHiddenVariable => 2.0 * std::f64::consts::SQRT_2,
            Regime::Nonlocal => 2.0 * 3f64.sqrt(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Classical => "Classical",
            Regime::LocalHiddenVariable => "LocalHiddenVariable",
            Regime::Nonlocal => "Nonlocal",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorWitness {
    pub pair: &'static str,
    pub cross_site: bool,
    /// Max-entry norm of the commutator.
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationRegime {
    pub regime: Regime,
    pub expected_bound: f64,
    pub witness: Vec<CommutatorWitness>,
}

/// Classify with the default commutator threshold.
pub fn classify(s: &BellScenario) -> CommutationRegime {
    classify_regime(s, TAU_COMMUTATOR)
}

/// Compute all six pairwise commutators (in the full space) and classify.
pub fn classify_regime(s: &BellScenario, tol: f64) -> CommutationRegime {
    let [a1, a2, b1, b2] = s.embedded();
    let pairs: [(&'static str, bool, &_, &_); 6] = [
        ("a1,a2", false, &a1, &a2),
        ("b1,b2", false, &b1, &b2),
        ("a1,b1", true, &a1, &b1),
        ("a1,b2", true, &a1, &b2),
        ("a2,b1", true, &a2, &b1),
        ("a2,b2", true, &a2, &b2),
    ];
    let witness: Vec<CommutatorWitness> = pairs
        .iter()
        .map(|&(pair, cross_site, x, y)| CommutatorWitness {
            pair,
            cross_site,
            norm: commutator(x, y).expect("validated scenario").max_abs(),
        })
        .collect();
    let cross = witness.iter().any(|w| w.cross_site && w.norm > tol);
    let same = witness.iter().any(|w| !w.cross_site && w.norm > tol);
    let regime = match (cross, same) {
        (true, _) => Regime::Nonlocal,
        (false, true) => Regime::LocalHiddenVariable,
        (false, false) => Regime::Classical,
    };
    CommutationRegime {
        regime,
        expected_bound: regime.expected_bound(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::scenario::ValueRange;

    #[test]
    fn reference_scenarios() {
        let d = |v: &[f64]| ComplexMatrix::from_diagonal(v).unwrap();
        let diag = BellScenario::tensor(
            [d(&[1.0, -1.0]), d(&[0.5, 1.0])],
            [d(&[-1.0, 1.0]), d(&[1.0, 1.0])],
            ValueRange::symmetric(),
        )
        .unwrap();
        let c = classify(&diag);
        assert_eq!(c.regime, Regime::Classical);
        assert_eq!(c.expected_bound, 2.0);
        assert_eq!(c.witness.len(), 6);

        let z = ComplexMatrix::pauli_z();
        let x = ComplexMatrix::pauli_x();
        let y = ComplexMatrix::pauli_y();
        let local =
            BellScenario::tensor([z.clone(), x.clone()], [z.clone(), x.clone()], ValueRange::symmetric()).unwrap();
        let c = classify(&local);
        assert_eq!(c.regime, Regime::LocalHiddenVariable);
        assert_eq!(c.expected_bound, 2.0 * 2f64.sqrt());

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b2 = (&x + &y).scale_real(h);
        let shared = BellScenario::shared([z, x, y, b2], ValueRange::symmetric()).unwrap();
        let c = classify(&shared);
        assert_eq!(c.regime, Regime::Nonlocal);
        assert_eq!(c.expected_bound, 2.0 * 3f64.sqrt());
        assert!(c.witness.iter().all(|w| w.norm > 1e-9));
    }

    #[test]
    fn shared_commuting_is_classical() {
        let i = ComplexMatrix::identity(2).unwrap();
        let z = ComplexMatrix::pauli_z();
        let s = BellScenario::shared([z.clone(), i.clone(), z, i], ValueRange::symmetric()).unwrap();
        assert_eq!(classify(&s).regime, Regime::Classical);
    }
}
