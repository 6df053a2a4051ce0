use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::error::{Error, Result};
use crate::simulator::{
    chsh_estimate, expected_table, run_model, AngleSettings, ChshEstimate, CoincidenceStats, Detection, Model,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub phi: f64,
    pub stats: CoincidenceStats,
    pub estimate: ChshEstimate,
    /// Infinite-shot `S(φ)` when the model has a closed form.
    pub expected_s: Option<f64>,
}

/// Sweep `α = (0, 2φ)`, `β = (φ, −φ)` over `φ ∈ [0, π/4]` in steps of `step`.
/// Row `k` is simulated with seed `seed + k`.
pub fn angle_scan(model: &Model, step: f64, shots: u64, seed: u64) -> Result<Vec<ScanRow>> {
    if !(step > 0.0 && step <= FRAC_PI_8 + 1e-15) {
        return Err(Error::Argument(format!("scan step must lie in (0, π/8], got {step}")));
    }
    let count = ((FRAC_PI_4 / step) + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|k| {
            let phi = (k as f64 * step).min(FRAC_PI_4);
            let settings = AngleSettings::chsh_family(phi)?;
            let stats = run_model(model, &settings, shots, seed.wrapping_add(k as u64), Detection::IDEAL)?;
            let estimate = chsh_estimate(&stats)?;
            Ok(ScanRow {
                phi,
                expected_s: expected_table(model, &settings).map(|t| t.chsh()),
                stats,
                estimate,
            })
        })
        .collect()
}
