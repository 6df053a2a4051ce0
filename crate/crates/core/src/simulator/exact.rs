use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::scenario::CorrelationTable;
use crate::simulator::{AngleSettings, LhvModel, Model, ResponseRule, SettingPair};

fn relative_angle(alpha: f64, beta: f64) -> f64 {
    let d = (alpha - beta).rem_euclid(PI);
    if d > FRAC_PI_2 {
        PI - d
    } else {
        d
    }
}

/// Infinite-shot correlation `E(α, β)` where a closed form is known.
///
/// Quantum `cos 2Δ`; deterministic-sign pair `1 − 4Δ/π` on `Δ ∈ [0, π/2]`;
/// Malus pair `½ cos 2Δ`; mixed sign/Malus `(2/π) cos 2Δ`. Custom rules give `None`.
pub fn expected_correlation(model: &Model, alpha: f64, beta: f64) -> Option<f64> {
    let delta = relative_angle(alpha, beta);
    match model {
        Model::Quantum => Some((2.0 * delta).cos()),
        Model::Lhv(m) => match (&m.response_a, &m.response_b) {
            (ResponseRule::DeterministicSign, ResponseRule::DeterministicSign) => Some(1.0 - 4.0 * delta / PI),
            (ResponseRule::MalusProbabilistic, ResponseRule::MalusProbabilistic) => Some(0.5 * (2.0 * delta).cos()),
            (ResponseRule::DeterministicSign, ResponseRule::MalusProbabilistic)
            | (ResponseRule::MalusProbabilistic, ResponseRule::DeterministicSign) => {
                Some(2.0 / PI * (2.0 * delta).cos())
            }
            _ => None,
        },
    }
}

pub fn expected_table(model: &Model, settings: &AngleSettings) -> Option<CorrelationTable> {
    let e = |p: SettingPair| {
        let (a, b) = settings.angles(p);
        expected_correlation(model, a, b)
    };
    Some(CorrelationTable::new(
        e(SettingPair::A1B1)?,
        e(SettingPair::A2B1)?,
        e(SettingPair::A1B2)?,
        e(SettingPair::A2B2)?,
    ))
}

/// Noise-free correlation table of the deterministic-sign model.
///
/// Each response `sign(cos 2(θ − λ))` only flips at `λ = θ ± π/4 (mod π)`, so
/// `[0, π)` splits into intervals on which every response is constant. Each
/// interval is further cut into `grid` equal cells evaluated at their
/// midpoints and weighted by length.
pub fn deterministic_table(settings: &AngleSettings, grid: usize) -> CorrelationTable {
    let model = LhvModel::deterministic_sign();
    let angles = [settings.alpha1, settings.alpha2, settings.beta1, settings.beta2];
    let mut cuts = vec![0.0, PI];
    for theta in angles {
        for offset in [FRAC_PI_4, 3.0 * FRAC_PI_4] {
            cuts.push((theta + offset).rem_euclid(PI));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let grid = grid.max(1);
    let mut e = [0.0; 4];
    for w in cuts.windows(2) {
        let (l, r) = (w[0], w[1]);
        if r <= l {
            continue;
        }
        let cell = (r - l) / grid as f64;
        for g in 0..grid {
            let lambda = l + (g as f64 + 0.5) * cell;
            for pair in SettingPair::ALL {
                let (a, b) = settings.angles(pair);
                let sa = model.response_a.transmits(lambda, a, 0.0);
                let sb = model.response_b.transmits(lambda, b, 0.0);
                e[pair.index()] += if sa == sb { cell } else { -cell };
            }
        }
    }
    let [e11, e21, e12, e22] = e.map(|x| x / PI);
    CorrelationTable::new(e11, e21, e12, e22)
}

/// Exact `S` of the deterministic-sign model; never exceeds 2.
pub fn enumerate_deterministic_lhv(settings: &AngleSettings, grid: usize) -> f64 {
    let s = deterministic_table(settings, grid).chsh();
    assert!(s <= 2.0 + 1e-12, "deterministic LHV value {s} exceeds 2");
    s
}
