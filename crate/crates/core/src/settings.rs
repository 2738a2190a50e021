use serde::{Deserialize, Serialize};

use crate::error::{DzetaError, Result};
use crate::ComplexValue;

/// Free parameters of the evaluators: truncation points, contour height,
/// tolerances and exclusion radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    /// Minimum number of explicit terms in every m-sum before the tail
    /// expansion takes over.
    pub m_cutoff: usize,
    /// Default split point N (and Mellin–Barnes parameter x) for the
    /// continuation routes.
    pub n_cutoff: usize,
    /// Explicit length of the k-sum in the absolutely convergent evaluators.
    pub k_cutoff: usize,
    /// Minimum half height of the truncated vertical contour.
    pub contour_half_height: f64,
    /// Absolute error target.
    pub tol: f64,
    /// Exclusion radius around every point of the singular locus.
    pub singular_radius: f64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            m_cutoff: 64,
            n_cutoff: 32,
            k_cutoff: 1000,
            contour_half_height: 50.0,
            tol: 1e-10,
            singular_radius: 1e-6,
        }
    }
}

impl EvalSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(DzetaError::Domain(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.singular_radius > 0.0 && self.singular_radius.is_finite()) {
            return Err(DzetaError::Domain(format!(
                "singular_radius must be positive, got {}",
                self.singular_radius
            )));
        }
        if !(self.contour_half_height > 0.0 && self.contour_half_height.is_finite()) {
            return Err(DzetaError::Domain("contour_half_height must be positive".into()));
        }
        if self.m_cutoff < 2 || self.n_cutoff < 2 || self.k_cutoff < 2 {
            return Err(DzetaError::Domain("all cutoffs must be at least 2".into()));
        }
        Ok(())
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Which evaluation formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    Direct,
    EulerMaclaurin,
    MellinBarnes,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Direct => "Direct",
            Route::EulerMaclaurin => "EulerMaclaurin",
            Route::MellinBarnes => "MellinBarnes",
        }
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    /// Sum of certified truncation and rounding bounds.
    pub est_error: f64,
    pub route: Route,
    pub terms_used: usize,
}

pub(crate) fn check_finite(name: &str, z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(DzetaError::Domain(format!("{name} is not finite: {z}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        EvalSettings::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_settings() {
        let mut s = EvalSettings::default();
        s.tol = 0.0;
        assert!(s.validate().is_err());
        let mut s = EvalSettings::default();
        s.k_cutoff = 1;
        assert!(s.validate().is_err());
        let mut s = EvalSettings::default();
        s.singular_radius = -1.0;
        assert!(s.validate().is_err());
    }
}
