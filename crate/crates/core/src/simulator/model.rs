use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Polarizer orientations in radians, canonicalized into `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSettings {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

fn canonical(theta: f64) -> f64 {
    // `+ 0.0` folds −0 into +0
    let t = theta.rem_euclid(PI) + 0.0;
    if t >= PI {
        0.0
    } else {
        t
    }
}

impl AngleSettings {
    pub fn new(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha1", alpha1),
            ("alpha2", alpha2),
            ("beta1", beta1),
            ("beta2", beta2),
        ] {
            if !v.is_finite() {
                return Err(Error::Argument(format!("angle {name} is not finite")));
            }
        }
        Ok(Self {
            alpha1: canonical(alpha1),
            alpha2: canonical(alpha2),
            beta1: canonical(beta1),
            beta2: canonical(beta2),
        })
    }

    pub fn from_degrees(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(
            alpha1.to_radians(),
            alpha2.to_radians(),
            beta1.to_radians(),
            beta2.to_radians(),
        )
    }

    /// `α = (0, π/4)`, `β = (π/8, −π/8)`: the angles where the quantum value peaks at 2√2.
    pub fn optimal_chsh() -> Self {
        Self::new(0.0, PI / 4.0, PI / 8.0, -PI / 8.0).expect("finite")
    }

    /// One-parameter family `α = (0, 2φ)`, `β = (φ, −φ)`.
    pub fn chsh_family(phi: f64) -> Result<Self> {
        Self::new(0.0, 2.0 * phi, phi, -phi)
    }

    pub fn angles(&self, pair: SettingPair) -> (f64, f64) {
        let alpha = if pair.alpha_index() == 1 {
            self.alpha1
        } else {
            self.alpha2
        };
        let beta = if pair.beta_index() == 1 { self.beta1 } else { self.beta2 };
        (alpha, beta)
    }

    /// All four angles shifted by a common offset.
    pub fn rotated(&self, offset: f64) -> Result<Self> {
        Self::new(
            self.alpha1 + offset,
            self.alpha2 + offset,
            self.beta1 + offset,
            self.beta2 + offset,
        )
    }
}

/// Setting pair `(j, k)`: polarizer `α_j` on arm A, `β_k` on arm B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SettingPair {
    A1B1,
    A2B1,
    A1B2,
    A2B2,
}

impl SettingPair {
    /// In CHSH order: the sign pattern is `(+, +, +, −)`.
    pub const ALL: [SettingPair; 4] = [
        SettingPair::A1B1,
        SettingPair::A2B1,
        SettingPair::A1B2,
        SettingPair::A2B2,
    ];

    pub fn alpha_index(self) -> usize {
        match self {
            SettingPair::A1B1 | SettingPair::A1B2 => 1,
            SettingPair::A2B1 | SettingPair::A2B2 => 2,
        }
    }

    pub fn beta_index(self) -> usize {
        match self {
            SettingPair::A1B1 | SettingPair::A2B1 => 1,
            SettingPair::A1B2 | SettingPair::A2B2 => 2,
        }
    }

    pub fn index(self) -> usize {
        match self {
            SettingPair::A1B1 => 0,
            SettingPair::A2B1 => 1,
            SettingPair::A1B2 => 2,
            SettingPair::A2B2 => 3,
        }
    }

    pub fn chsh_sign(self) -> f64 {
        if self == SettingPair::A2B2 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SettingPair::A1B1 => "E11",
            SettingPair::A2B1 => "E21",
            SettingPair::A1B2 => "E12",
            SettingPair::A2B2 => "E22",
        }
    }
}

/// A user-supplied local response: the outcome at one arm from the hidden
/// variable, that arm's polarizer angle and a private uniform draw.
pub trait LocalResponse: Send + Sync {
    /// `true` for outcome +1 (transmission).
    fn transmits(&self, lambda: f64, theta: f64, uniform: f64) -> bool;

    fn name(&self) -> &str {
        "custom"
    }
}

#[derive(Clone)]
pub enum ResponseRule {
    /// `sign(cos 2(θ − λ))` with `sign(0) = +1`.
    DeterministicSign,
    /// +1 with probability `cos²(θ − λ)`.
    MalusProbabilistic,
    Custom(Arc<dyn LocalResponse>),
}

impl ResponseRule {
    #[inline]
    pub fn transmits(&self, lambda: f64, theta: f64, uniform: f64) -> bool {
        match self {
            ResponseRule::DeterministicSign => (2.0 * (theta - lambda)).cos() >= 0.0,
            ResponseRule::MalusProbabilistic => uniform < (theta - lambda).cos().powi(2),
            ResponseRule::Custom(r) => r.transmits(lambda, theta, uniform),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            ResponseRule::DeterministicSign => "deterministic",
            ResponseRule::MalusProbabilistic => "malus",
            ResponseRule::Custom(r) => r.name(),
        }
    }
}

impl fmt::Debug for ResponseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HiddenDistribution {
    /// `λ` uniform on `[0, π)`.
    UniformAngle,
}

/// Local hidden-variable model: each arm sees only `λ` and its own angle.
#[derive(Debug, Clone)]
pub struct LhvModel {
    pub name: String,
    pub hidden_distribution: HiddenDistribution,
    pub response_a: ResponseRule,
    pub response_b: ResponseRule,
}

impl LhvModel {
    pub fn deterministic_sign() -> Self {
        Self {
            name: "deterministic".into(),
            hidden_distribution: HiddenDistribution::UniformAngle,
            response_a: ResponseRule::DeterministicSign,
            response_b: ResponseRule::DeterministicSign,
        }
    }

    pub fn malus() -> Self {
        Self {
            name: "malus".into(),
            hidden_distribution: HiddenDistribution::UniformAngle,
            response_a: ResponseRule::MalusProbabilistic,
            response_b: ResponseRule::MalusProbabilistic,
        }
    }

    pub fn built_in() -> [Self; 2] {
        [Self::deterministic_sign(), Self::malus()]
    }
}

/// Either a local hidden-variable model or the quantum prediction for `Φ⁺`.
#[derive(Debug, Clone)]
pub enum Model {
    Quantum,
    Lhv(LhvModel),
}

impl Model {
    pub fn name(&self) -> &str {
        match self {
            Model::Quantum => "quantum",
            Model::Lhv(m) => &m.name,
        }
    }

    /// `quantum`, `deterministic` or `malus`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "quantum" => Some(Model::Quantum),
            "deterministic" | "deterministic_sign" => Some(Model::Lhv(LhvModel::deterministic_sign())),
            "malus" | "malus_probabilistic" => Some(Model::Lhv(LhvModel::malus())),
            _ => None,
        }
    }
}

/// Per-arm detection efficiencies; an undetected photon drops the coincidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub efficiency_a: f64,
    pub efficiency_b: f64,
}

impl Detection {
    pub const IDEAL: Detection = Detection {
        efficiency_a: 1.0,
        efficiency_b: 1.0,
    };

    pub fn new(efficiency_a: f64, efficiency_b: f64) -> Result<Self> {
        for e in [efficiency_a, efficiency_b] {
            if !(0.0..=1.0).contains(&e) {
                return Err(Error::Argument(format!("detector efficiency {e} outside [0, 1]")));
            }
        }
        Ok(Self {
            efficiency_a,
            efficiency_b,
        })
    }

    pub fn is_ideal(&self) -> bool {
        self.efficiency_a >= 1.0 && self.efficiency_b >= 1.0
    }
}

impl Default for Detection {
    fn default() -> Self {
        Self::IDEAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization() {
        let s = AngleSettings::from_degrees(0.0, 45.0, 22.5, -22.5).unwrap();
        assert!((s.beta2 - 157.5f64.to_radians()).abs() < 1e-15);
        assert_eq!(AngleSettings::new(PI, 0.0, 0.0, 0.0).unwrap().alpha1, 0.0);
        assert!(AngleSettings::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn sign_of_zero_is_plus() {
        // cos 2(π/4) is ~6e-17 > 0; exactly zero through λ = θ
        assert!(ResponseRule::DeterministicSign.transmits(0.0, 0.0, 0.9));
        assert!(!ResponseRule::DeterministicSign.transmits(PI / 2.0, 0.0, 0.0));
    }

    #[test]
    fn model_names() {
        assert_eq!(Model::from_name("quantum").unwrap().name(), "quantum");
        assert_eq!(Model::from_name("malus").unwrap().name(), "malus");
        assert!(Model::from_name("bohm").is_none());
    }
}
