use crate::error::{Error, Result};
use crate::scenario::CorrelationTable;

/// Change of `E11 + E21 + E12 − E22` when the two settings of arm A are
/// interchanged, `2·|E12 − E22|`.
///
/// Zero exactly when the combination is invariant under that interchange.
pub fn swap_assumption_delta(e11: f64, e21: f64, e12: f64, e22: f64) -> Result<f64> {
    for (name, e) in [("E11", e11), ("E21", e21), ("E12", e12), ("E22", e22)] {
        if !(-1.0..=1.0).contains(&e) {
            return Err(Error::Range(format!("{name} = {e} is outside [-1, 1]")));
        }
    }
    let original = CorrelationTable::new(e11, e21, e12, e22);
    Ok((original.chsh() - original.swap_a().chsh()).abs())
}

impl CorrelationTable {
    pub fn swap_delta(&self) -> Result<f64> {
        swap_assumption_delta(self.e11, self.e21, self.e12, self.e22)
    }
}
