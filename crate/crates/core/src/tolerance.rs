//! Numerical tolerances shared by the whole crate.
//!
//! The constants are the defaults; anything that needs a different
//! threshold takes a [`Tolerances`] value instead.

/// Hermiticity check on the max-entry norm of `m - m†`.
pub const TAU_HERM: f64 = 1e-10;
/// Unitarity check on the max-entry norm of `V†V - I`.
pub const TAU_UNITARY: f64 = 1e-10;
/// Reconstruction check on the max-entry norm of `V·diag(λ)·V† - m`.
pub const TAU_RECON: f64 = 1e-8;
/// Commutator norm above which a pair is treated as non-commuting.
pub const TAU_COMMUTATOR: f64 = 1e-9;
/// Norm/trace/positivity slack for quantum states.
pub const TAU_STATE: f64 = 1e-10;
/// Slack used when testing a spectrum against a value range.
pub const TAU_SPECTRUM: f64 = 1e-10;
/// Gap between `√⟨B†B⟩` and `|⟨B⟩|` above which the equality is flagged as failing.
pub const TAU_EQUALITY_GAP: f64 = 1e-9;

/// Largest matrix dimension per axis.
pub const DIMENSION_CAP: usize = 64;
/// Largest local dimension of one measurement site.
pub const SITE_DIMENSION_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub unitary: f64,
    pub reconstruction: f64,
    pub commutator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: TAU_HERM,
            unitary: TAU_UNITARY,
            reconstruction: TAU_RECON,
            commutator: TAU_COMMUTATOR,
        }
    }
}
