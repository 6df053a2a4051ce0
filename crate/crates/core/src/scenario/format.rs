//! Line-oriented scenario files.
//!
//! ```text
//! # two qubits, σz/σx on each arm
//! embedding = tensor          # or: shared
//! value_range = -1,1          # or: 0,1
//! dim_a = 2
//! dim_b = 2
//! a1 = pauli_z
//! a2 = pauli_x
//! b1 = bloch 0.7853981633974483 0
//! b2 = [1, 0; 0, -1]
//! state = phi_plus            # optional: optimal (default), mixed, basis K, [amplitudes]
//! ```
//!
//! Observables are a preset (`pauli_x`, `pauli_y`, `pauli_z`, `identity`,
//! `bloch THETA PHI` with angles in radians) or a bracketed row-major list of
//! complex entries such as `[1, -i; i, 0.5+0.25i]`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, QuantumState};
use crate::scenario::{build_scenario, optimal_state, BellScenario, Embedding, Observable, Site, ValueRange};

/// State requested by a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Optimal,
    PhiPlus,
    MaximallyMixed,
    Basis(usize),
    Amplitudes(Vec<Complex64>),
}

impl StateSpec {
    pub fn resolve(&self, s: &BellScenario) -> Result<QuantumState> {
        match self {
            StateSpec::Optimal => optimal_state(s),
            StateSpec::PhiPlus => {
                if s.dim() != 4 {
                    return Err(Error::Shape(format!(
                        "phi_plus needs dimension 4, scenario has {}",
                        s.dim()
                    )));
                }
                Ok(QuantumState::phi_plus())
            }
            StateSpec::MaximallyMixed => QuantumState::maximally_mixed(s.dim()),
            StateSpec::Basis(k) => QuantumState::basis(s.dim(), *k),
            StateSpec::Amplitudes(v) => QuantumState::normalized(v.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub scenario: BellScenario,
    pub state: StateSpec,
}

const KEYS: [&str; 9] = [
    "embedding",
    "value_range",
    "dim_a",
    "dim_b",
    "a1",
    "a2",
    "b1",
    "b2",
    "state",
];

pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unknown key `{key}`"),
            });
        };
        if entries.insert(known, (line_no, value.trim())).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }

    let embedding = match entries.get("embedding") {
        None => Embedding::TensorEmbedded,
        Some(&(line, v)) => match v {
            "tensor" | "tensor_embedded" => Embedding::TensorEmbedded,
            "shared" | "shared_space" => Embedding::SharedSpace,
            _ => return Err(parse_err(line, format!("unknown embedding `{v}`"))),
        },
    };
    let value_range = match entries.get("value_range") {
        None => ValueRange::symmetric(),
        Some(&(line, v)) => v.parse::<ValueRange>().map_err(|m| parse_err(line, m))?,
    };
    let dim = |key: &str| -> Result<Option<usize>> {
        entries
            .get(key)
            .map(|&(line, v)| {
                v.parse::<usize>()
                    .ok()
                    .filter(|d| *d >= 1)
                    .ok_or_else(|| parse_err(line, format!("{key} must be a positive integer")))
            })
            .transpose()
    };
    let (dim_a, dim_b) = (dim("dim_a")?, dim("dim_b")?);

    let observable = |key: &str, site: Site, expected_dim: Option<usize>| -> Result<Observable> {
        let &(line, v) = entries
            .get(key)
            .ok_or_else(|| parse_err(0, format!("missing observable `{key}`")))?;
        let m = parse_matrix(v).map_err(|m| parse_err(line, m))?;
        if let Some(d) = expected_dim {
            if m.rows() != d {
                return Err(Error::Shape(format!(
                    "line {line}: {key} has dimension {}, expected {d}",
                    m.rows()
                )));
            }
        }
        Observable::new(m, site, key)
    };
    let (site_a, site_b) = match embedding {
        Embedding::TensorEmbedded => (Site::ArmA, Site::ArmB),
        Embedding::SharedSpace => (Site::Shared, Site::Shared),
    };
    let scenario = build_scenario(
        observable("a1", site_a, dim_a)?,
        observable("a2", site_a, dim_a)?,
        observable("b1", site_b, dim_b)?,
        observable("b2", site_b, dim_b)?,
        embedding,
        value_range,
    )?;

    let state = match entries.get("state") {
        None => StateSpec::Optimal,
        Some(&(line, v)) => parse_state(v).map_err(|m| parse_err(line, m))?,
    };
    Ok(ScenarioFile { scenario, state })
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

fn parse_complex_list(v: &str) -> std::result::Result<Vec<Complex64>, String> {
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed entry list, got `{v}`"))?;
    inner
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Complex64>().map_err(|_| format!("bad complex number `{t}`")))
        .collect()
}

fn parse_matrix(v: &str) -> std::result::Result<ComplexMatrix, String> {
    let mut words = v.split_whitespace();
    match words.next() {
        Some("pauli_x") => Ok(ComplexMatrix::pauli_x()),
        Some("pauli_y") => Ok(ComplexMatrix::pauli_y()),
        Some("pauli_z") => Ok(ComplexMatrix::pauli_z()),
        Some("identity") => Ok(ComplexMatrix::identity(2).expect("static")),
        Some("bloch") => {
            let angles: Vec<f64> = words
                .map(|w| w.parse::<f64>().map_err(|_| format!("bad angle `{w}`")))
                .collect::<std::result::Result<_, _>>()?;
            match angles.as_slice() {
                [theta, phi] => Ok(ComplexMatrix::bloch(*theta, *phi)),
                _ => Err("bloch needs exactly two angles: theta phi".into()),
            }
        }
        Some(w) if w.starts_with('[') => {
            let entries = parse_complex_list(v)?;
            let n = (entries.len() as f64).sqrt().round() as usize;
            if n * n != entries.len() {
                return Err(format!("{} entries do not form a square matrix", entries.len()));
            }
            ComplexMatrix::new(n, n, entries).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown observable `{v}`")),
    }
}

fn parse_state(v: &str) -> std::result::Result<StateSpec, String> {
    let mut words = v.split_whitespace();
    match words.next() {
        Some("optimal") => Ok(StateSpec::Optimal),
        Some("phi_plus") => Ok(StateSpec::PhiPlus),
        Some("mixed") => Ok(StateSpec::MaximallyMixed),
        Some("basis") => words
            .next()
            .and_then(|k| k.parse().ok())
            .map(StateSpec::Basis)
            .ok_or_else(|| "basis needs an index".to_string()),
        Some(w) if w.starts_with('[') => parse_complex_list(v).map(StateSpec::Amplitudes),
        _ => Err(format!("unknown state `{v}`")),
    }
}
