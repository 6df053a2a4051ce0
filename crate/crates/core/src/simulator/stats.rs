use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scenario::CorrelationTable;
use crate::simulator::{AngleSettings, SettingPair};

/// Outcome counts of one setting pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairCounts {
    pub n_pp: u64,
    pub n_pm: u64,
    pub n_mp: u64,
    pub n_mm: u64,
    /// Photon pairs generated, detected or not.
    pub emitted: u64,
    /// Single detections at each arm, and how many of those were transmissions (+1).
    pub a_detected: u64,
    pub a_plus: u64,
    pub b_detected: u64,
    pub b_plus: u64,
}

impl PairCounts {
    pub fn coincidences(&self) -> u64 {
        self.n_pp + self.n_pm + self.n_mp + self.n_mm
    }

    /// `(n_pp + n_mm − n_pm − n_mp) / N`; `None` without coincidences.
    pub fn correlation(&self) -> Option<f64> {
        let n = self.coincidences();
        (n > 0).then(|| ((self.n_pp + self.n_mm) as f64 - (self.n_pm + self.n_mp) as f64) / n as f64)
    }

    /// `√((1 − E²)/N)`.
    pub fn standard_error(&self) -> Option<f64> {
        let e = self.correlation()?;
        Some(((1.0 - e * e).max(0.0) / self.coincidences() as f64).sqrt())
    }

    pub fn transmission_a(&self) -> Option<f64> {
        (self.a_detected > 0).then(|| self.a_plus as f64 / self.a_detected as f64)
    }

    pub fn transmission_b(&self) -> Option<f64> {
        (self.b_detected > 0).then(|| self.b_plus as f64 / self.b_detected as f64)
    }

    pub(crate) fn merge(&mut self, other: &PairCounts) {
        self.n_pp += other.n_pp;
        self.n_pm += other.n_pm;
        self.n_mp += other.n_mp;
        self.n_mm += other.n_mm;
        self.emitted += other.emitted;
        self.a_detected += other.a_detected;
        self.a_plus += other.a_plus;
        self.b_detected += other.b_detected;
        self.b_plus += other.b_plus;
    }
}

/// Counts for every setting pair of one simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceStats {
    pub model: String,
    pub settings: AngleSettings,
    pub pairs: BTreeMap<SettingPair, PairCounts>,
    /// Photon pairs emitted per setting pair.
    pub shots: u64,
    pub seed: u64,
}

impl CoincidenceStats {
    pub fn counts(&self, pair: SettingPair) -> Option<&PairCounts> {
        self.pairs.get(&pair)
    }

    pub fn correlation(&self, pair: SettingPair) -> Option<f64> {
        self.counts(pair)?.correlation()
    }

    pub fn standard_error(&self, pair: SettingPair) -> Option<f64> {
        self.counts(pair)?.standard_error()
    }
}

/// CHSH value `S = E11 + E21 + E12 − E22` with its propagated error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshEstimate {
    pub s: f64,
    pub sigma: f64,
    pub correlations: CorrelationTable,
    /// In [`SettingPair::ALL`] order.
    pub standard_errors: [f64; 4],
}

pub fn chsh_estimate(stats: &CoincidenceStats) -> Result<ChshEstimate> {
    let mut e = [0.0; 4];
    let mut se = [0.0; 4];
    for pair in SettingPair::ALL {
        let counts = stats
            .counts(pair)
            .ok_or_else(|| Error::Argument(format!("missing setting pair {}", pair.label())))?;
        e[pair.index()] = counts
            .correlation()
            .ok_or_else(|| Error::Argument(format!("setting pair {} has no coincidences", pair.label())))?;
        se[pair.index()] = counts.standard_error().expect("coincidences present");
    }
    let correlations = CorrelationTable::new(e[0], e[1], e[2], e[3]);
    Ok(ChshEstimate {
        s: correlations.chsh(),
        sigma: se.iter().map(|x| x * x).sum::<f64>().sqrt(),
        correlations,
        standard_errors: se,
    })
}
