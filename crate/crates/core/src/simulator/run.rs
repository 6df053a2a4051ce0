//! Seeded Monte Carlo runs.
//!
//! Shots are split into blocks of [`BLOCK_SHOTS`]. Block `b` of setting pair
//! `p` draws from ChaCha8 stream `(p << 32) | b` of the run seed, so merging
//! the block counters in any order yields the same totals as a serial run.
//! Each shot draws, in order: `λ`, arm A's uniform, arm B's uniform, then the
//! two detector-loss uniforms when losses are enabled.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{expectation, tensor_product, ComplexMatrix, QuantumState};
use crate::random::seeded;
use crate::simulator::{AngleSettings, CoincidenceStats, Detection, LhvModel, Model, PairCounts, SettingPair};

pub const BLOCK_SHOTS: u64 = 1 << 16;

fn stream(seed: u64, pair: SettingPair, block: u64) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(((pair.index() as u64) << 32) | block);
    rng
}

/// Source of outcome pairs for one setting pair; `true` = +1.
trait PairSource: Sync {
    fn draw(&self, rng: &mut ChaCha8Rng) -> (bool, bool);
}

struct LhvSource<'a> {
    model: &'a LhvModel,
    alpha: f64,
    beta: f64,
}

impl PairSource for LhvSource<'_> {
    #[inline]
    fn draw(&self, rng: &mut ChaCha8Rng) -> (bool, bool) {
        let lambda = PI * rng.gen::<f64>();
        let ua = rng.gen::<f64>();
        let ub = rng.gen::<f64>();
        (
            self.model.response_a.transmits(lambda, self.alpha, ua),
            self.model.response_b.transmits(lambda, self.beta, ub),
        )
    }
}

/// Cumulative joint distribution over `(++, +−, −+, −−)`.
struct QuantumSource {
    cumulative: [f64; 3],
}

impl PairSource for QuantumSource {
    #[inline]
    fn draw(&self, rng: &mut ChaCha8Rng) -> (bool, bool) {
        let u = rng.gen::<f64>();
        let [c0, c1, c2] = self.cumulative;
        if u < c0 {
            (true, true)
        } else if u < c1 {
            (true, false)
        } else if u < c2 {
            (false, true)
        } else {
            (false, false)
        }
    }
}

/// Joint outcome probabilities `[p_pp, p_pm, p_mp, p_mm]` for `Φ⁺` measured with
/// polarizers at `alpha` and `beta`, from the projectors on `H_a ⊗ H_b`.
pub fn quantum_joint_probabilities(alpha: f64, beta: f64) -> Result<[f64; 4]> {
    let phi = QuantumState::phi_plus();
    let id = ComplexMatrix::identity(2)?;
    let pa = ComplexMatrix::polarization_projector(alpha);
    let pb = ComplexMatrix::polarization_projector(beta);
    let ma = &id - &pa;
    let mb = &id - &pb;
    let p = |x: &ComplexMatrix, y: &ComplexMatrix| -> Result<f64> {
        Ok(expectation(&phi, &tensor_product(x, y)?)?.max(0.0))
    };
    Ok([p(&pa, &pb)?, p(&pa, &mb)?, p(&ma, &pb)?, p(&ma, &mb)?])
}

fn sample_pair(source: &dyn PairSource, pair: SettingPair, shots: u64, seed: u64, detection: Detection) -> PairCounts {
    let blocks = shots.div_ceil(BLOCK_SHOTS);
    let lossy = !detection.is_ideal();
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, pair, b);
            let n = BLOCK_SHOTS.min(shots - b * BLOCK_SHOTS);
            let mut c = PairCounts {
                emitted: n,
                ..PairCounts::default()
            };
            for _ in 0..n {
                let (a, bo) = source.draw(&mut rng);
                let (seen_a, seen_b) = if lossy {
                    (
                        rng.gen::<f64>() < detection.efficiency_a,
                        rng.gen::<f64>() < detection.efficiency_b,
                    )
                } else {
                    (true, true)
                };
                if seen_a {
                    c.a_detected += 1;
                    c.a_plus += a as u64;
                }
                if seen_b {
                    c.b_detected += 1;
                    c.b_plus += bo as u64;
                }
                if seen_a && seen_b {
                    match (a, bo) {
                        (true, true) => c.n_pp += 1,
                        (true, false) => c.n_pm += 1,
                        (false, true) => c.n_mp += 1,
                        (false, false) => c.n_mm += 1,
                    }
                }
            }
            c
        })
        .reduce(PairCounts::default, |mut acc, c| {
            acc.merge(&c);
            acc
        })
}

fn check_shots(shots: u64) -> Result<()> {
    if shots == 0 {
        return Err(Error::Argument("shots must be at least 1".into()));
    }
    Ok(())
}

pub fn run_lhv(model: &LhvModel, settings: &AngleSettings, shots: u64, seed: u64) -> Result<CoincidenceStats> {
    run_lhv_with(model, settings, shots, seed, Detection::IDEAL)
}

pub fn run_lhv_with(
    model: &LhvModel,
    settings: &AngleSettings,
    shots: u64,
    seed: u64,
    detection: Detection,
) -> Result<CoincidenceStats> {
    check_shots(shots)?;
    let pairs = SettingPair::ALL
        .iter()
        .map(|&pair| {
            let (alpha, beta) = settings.angles(pair);
            let source = LhvSource { model, alpha, beta };
            (pair, sample_pair(&source, pair, shots, seed, detection))
        })
        .collect();
    Ok(CoincidenceStats {
        model: model.name.clone(),
        settings: *settings,
        pairs,
        shots,
        seed,
    })
}

pub fn run_quantum(settings: &AngleSettings, shots: u64, seed: u64) -> Result<CoincidenceStats> {
    run_quantum_with(settings, shots, seed, Detection::IDEAL)
}

pub fn run_quantum_with(
    settings: &AngleSettings,
    shots: u64,
    seed: u64,
    detection: Detection,
) -> Result<CoincidenceStats> {
    check_shots(shots)?;
    let mut pairs = std::collections::BTreeMap::new();
    for pair in SettingPair::ALL {
        let (alpha, beta) = settings.angles(pair);
        let [p0, p1, p2, _] = quantum_joint_probabilities(alpha, beta)?;
        let source = QuantumSource {
            cumulative: [p0, p0 + p1, p0 + p1 + p2],
        };
        pairs.insert(pair, sample_pair(&source, pair, shots, seed, detection));
    }
    Ok(CoincidenceStats {
        model: "quantum".into(),
        settings: *settings,
        pairs,
        shots,
        seed,
    })
}

pub fn run_model(
    model: &Model,
    settings: &AngleSettings,
    shots: u64,
    seed: u64,
    detection: Detection,
) -> Result<CoincidenceStats> {
    match model {
        Model::Quantum => run_quantum_with(settings, shots, seed, detection),
        Model::Lhv(m) => run_lhv_with(m, settings, shots, seed, detection),
    }
}

/// The first `n` raw outcome pairs of one setting pair (no detector losses),
/// exactly as the counting runs draw them.
pub fn outcome_stream(
    model: &Model,
    settings: &AngleSettings,
    pair: SettingPair,
    n: u64,
    seed: u64,
) -> Result<Vec<(bool, bool)>> {
    let (alpha, beta) = settings.angles(pair);
    let quantum;
    let lhv;
    let source: &dyn PairSource = match model {
        Model::Quantum => {
            let [p0, p1, p2, _] = quantum_joint_probabilities(alpha, beta)?;
            quantum = QuantumSource {
                cumulative: [p0, p0 + p1, p0 + p1 + p2],
            };
            &quantum
        }
        Model::Lhv(m) => {
            lhv = LhvSource { model: m, alpha, beta };
            &lhv
        }
    };
    let mut out = Vec::with_capacity(n as usize);
    let mut block = 0;
    while (out.len() as u64) < n {
        let mut rng = stream(seed, pair, block);
        let take = BLOCK_SHOTS.min(n - out.len() as u64);
        out.extend((0..take).map(|_| source.draw(&mut rng)));
        block += 1;
    }
    Ok(out)
}
