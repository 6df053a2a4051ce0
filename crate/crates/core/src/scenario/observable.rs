use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::tolerance::{TAU_HERM, TAU_SPECTRUM};

/// Closed interval of allowed observable eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueRange {
    lo: f64,
    hi: f64,
}

impl ValueRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Range(format!("invalid value range [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// `[−1, 1]`, outcome-valued observables.
    pub const fn symmetric() -> Self {
        Self { lo: -1.0, hi: 1.0 }
    }

    /// `[0, 1]`, transmission-probability observables.
    pub const fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, min: f64, max: f64) -> bool {
        min >= self.lo - TAU_SPECTRUM && max <= self.hi + TAU_SPECTRUM
    }
}

impl Default for ValueRange {
    fn default() -> Self {
        Self::symmetric()
    }
}

/// `lo,hi`, optionally bracketed.
impl std::str::FromStr for ValueRange {
    type Err = String;

    fn from_str(v: &str) -> std::result::Result<Self, String> {
        let inner = v.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(format!("value range must be `lo,hi`, got `{v}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad number `{}`", parts[0]))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad number `{}`", parts[1]))?;
        ValueRange::new(lo, hi).map_err(|e| e.to_string())
    }
}

impl fmt::Display for ValueRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Measurement site an observable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    ArmA,
    ArmB,
    Shared,
}

/// Hermitian measurement operator tagged with its site.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    site: Site,
    label: String,
    spectrum_min: f64,
    spectrum_max: f64,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, site: Site, label: impl Into<String>) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > TAU_HERM {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let spectrum = hermitian_eigen(&matrix)?;
        Ok(Self {
            spectrum_min: spectrum.min(),
            spectrum_max: spectrum.max(),
            matrix,
            site,
            label: label.into(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Smallest and largest eigenvalue.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        (self.spectrum_min, self.spectrum_max)
    }

    pub fn check_range(&self, range: ValueRange) -> Result<()> {
        if range.contains(self.spectrum_min, self.spectrum_max) {
            Ok(())
        } else {
            Err(Error::Feasibility {
                label: self.label.clone(),
                min: self.spectrum_min,
                max: self.spectrum_max,
                lo: range.lo(),
                hi: range.hi(),
            })
        }
    }

    pub fn with_site(mut self, site: Site) -> Self {
        self.site = site;
        self
    }
}
