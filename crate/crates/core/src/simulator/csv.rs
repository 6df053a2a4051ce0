//! CSV rows for simulation output.
//!
//! Columns: `model,alpha1,alpha2,beta1,beta2,shots,E11,E21,E12,E22,S,sigma,seed`.
//! Angles are in radians; floats carry 17 significant digits.

use crate::simulator::{AngleSettings, ChshEstimate, CoincidenceStats};

pub const SIMULATION_HEADER: &str = "model,alpha1,alpha2,beta1,beta2,shots,E11,E21,E12,E22,S,sigma,seed";

/// Float with 17 significant digits.
pub fn format_full(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn simulation_row(stats: &CoincidenceStats, estimate: &ChshEstimate) -> String {
    let AngleSettings {
        alpha1,
        alpha2,
        beta1,
        beta2,
    } = stats.settings;
    let c = estimate.correlations;
    let floats = [alpha1, alpha2, beta1, beta2];
    let tail = [c.e11, c.e21, c.e12, c.e22, estimate.s, estimate.sigma];
    let mut fields = vec![stats.model.clone()];
    fields.extend(floats.iter().map(|&x| format_full(x)));
    fields.push(stats.shots.to_string());
    fields.extend(tail.iter().map(|&x| format_full(x)));
    fields.push(stats.seed.to_string());
    fields.join(",")
}
