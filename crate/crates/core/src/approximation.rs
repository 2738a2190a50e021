//! Truncated-sum approximants of ζ₂ with their measured errors, and log-log
//! regression of the error against the truncation length.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{classify_region, m_length, singular_reason, zeta2_eval, RegionClass};
use crate::double_zeta::ArgumentPair;
use crate::error::{DzetaError, Result};
use crate::msums::{pair_tail, shifted_zeta_tail};
use crate::settings::EvalSettings;
use crate::sum::ComplexSum;
use crate::ComplexValue;

/// Growth x^exponent (log x)^log_power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedOrder {
    pub exponent: f64,
    pub log_power: u32,
}

impl PredictedOrder {
    pub fn at(&self, x: f64) -> f64 {
        x.powf(self.exponent) * x.ln().powi(self.log_power as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub approximant: ComplexValue,
    pub reference: ComplexValue,
    pub abs_error: f64,
    pub predicted_order: PredictedOrder,
    pub x_or_t: f64,
}

impl ApproxReport {
    fn new(approximant: Complex64, reference: Complex64, predicted_order: PredictedOrder, x_or_t: f64) -> Self {
        Self { approximant, reference, abs_error: (approximant - reference).norm(), predicted_order, x_or_t }
    }
}

fn case_split(sigma0: f64, sigma: f64) -> PredictedOrder {
    if sigma0 > 1.0 {
        PredictedOrder { exponent: -sigma, log_power: 0 }
    } else if sigma0 == 1.0 {
        PredictedOrder { exponent: -sigma, log_power: 1 }
    } else {
        PredictedOrder { exponent: 1.0 - sigma - sigma0, log_power: 0 }
    }
}

/// Σ_m Σ_{n≤N} m^{-s₀}(m+n)^{-s}, summed over all m.
fn truncated_double_sum(s0: Complex64, s: Complex64, n: usize, settings: &EvalSettings) -> Result<Complex64> {
    let m_max = m_length(settings, n as f64, s0, s);
    let top = m_max + n;
    let mut prefix = Vec::with_capacity(top + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    let mut run = ComplexSum::new();
    for j in 1..=top {
        run.add((-s * (j as f64).ln()).exp());
        prefix.push(run.value());
    }
    let mut acc = ComplexSum::new();
    for m in 1..=m_max {
        acc.add((-s0 * (m as f64).ln()).exp() * (prefix[m + n] - prefix[m]));
    }
    let tail = shifted_zeta_tail(s0, s, 0.0, m_max)? - shifted_zeta_tail(s0, s, n as f64, m_max)?;
    Ok(acc.value() + tail.value)
}

/// (1−s)^{-1} Σ_m m^{-s₀}(m+x)^{1−s}, summed over all m.
fn shifted_power_sum(s0: Complex64, s: Complex64, x: f64, settings: &EvalSettings) -> Result<Complex64> {
    let m_max = m_length(settings, x, s0, s);
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let mut acc = ComplexSum::new();
    for m in 1..=m_max {
        let mf = m as f64;
        acc.add((-s0 * mf.ln() + one_minus_s * (mf + x).ln()).exp());
    }
    let tail = pair_tail(s0, s - 1.0, x, m_max)?;
    Ok((acc.value() + tail.value) / one_minus_s)
}

/// Truncated approximation with split x and the Euler–Maclaurin correction.
pub fn approx_thm31(p: &ArgumentPair, x: f64, c: f64, settings: &EvalSettings) -> Result<ApproxReport> {
    settings.validate()?;
    p.check_finite()?;
    let (s0, s) = (p.s0, p.s);
    if !(s.re > 0.0f64.max(2.0 - s0.re)) {
        return Err(DzetaError::Domain(format!("needs Re s > max(0, 2 − Re s0), got s0 = {s0}, s = {s}")));
    }
    if !(c > 1.0) {
        return Err(DzetaError::Domain(format!("needs C > 1, got {c}")));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(DzetaError::Domain(format!("needs x ≥ 1, got {x}")));
    }
    if s.im.abs() > 2.0 * std::f64::consts::PI * x / c {
        return Err(DzetaError::Domain(format!("needs |t| ≤ 2πx/C, got t = {}, x = {x}, C = {c}", s.im)));
    }
    if (s - 1.0).norm() < settings.singular_radius {
        return Err(DzetaError::Pole("s = 1".into()));
    }
    let approximant = truncated_double_sum(s0, s, x.floor() as usize, settings)? - shifted_power_sum(s0, s, x, settings)?;
    let reference = zeta2_eval(p, settings)?.value;
    Ok(ApproxReport::new(approximant, reference, case_split(s0.re, s.re), x))
}

/// Truncated approximation with the inner sum cut at n ≤ t.
pub fn approx_thm53(p: &ArgumentPair, settings: &EvalSettings) -> Result<ApproxReport> {
    settings.validate()?;
    p.check_finite()?;
    let (s0, s) = (p.s0, p.s);
    if !(s0.re > 0.0 && s0.re < 1.5 && s.re > 0.5 && s0.re + s.re > 1.0) {
        return Err(DzetaError::Domain(format!(
            "needs 0 < Re s0 < 3/2, Re s > 1/2, Re(s0+s) > 1, got s0 = {s0}, s = {s}"
        )));
    }
    if s.im < 2.0 {
        return Err(DzetaError::Domain(format!("needs t ≥ 2, got {}", s.im)));
    }
    if let Some(reason) = singular_reason(p, settings.singular_radius) {
        return Err(DzetaError::Singular(reason));
    }
    if classify_region(p, settings) == RegionClass::OutOfDomain {
        return Err(DzetaError::Domain("point outside every continuation region".into()));
    }
    let t = s.im;
    let approximant = truncated_double_sum(s0, s, t.floor() as usize, settings)?;
    let reference = zeta2_eval(p, settings)?.value;
    Ok(ApproxReport::new(approximant, reference, case_split(s0.re, s.re), t))
}

/// Least-squares slope of (log x, log y).
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.max(f64::MIN_POSITIVE).ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (a, b) in lx.iter().zip(&ly) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    sxy / sxx
}

/// Fitted exponent of abs_error against x_or_t after dividing out the
/// predicted log power.
pub fn error_exponent_fit(reports: &[ApproxReport]) -> Result<f64> {
    if reports.len() < 5 {
        return Err(DzetaError::InsufficientData(format!("need at least 5 reports, got {}", reports.len())));
    }
    if reports.windows(2).any(|w| !(w[1].x_or_t > w[0].x_or_t)) || reports[0].x_or_t <= 1.0 {
        return Err(DzetaError::InsufficientData("x_or_t must be strictly increasing and above 1".into()));
    }
    let first = reports[0].x_or_t;
    let last = reports[reports.len() - 1].x_or_t;
    if (last / first).log10() < 1.5 {
        return Err(DzetaError::InsufficientData(format!("x_or_t spans only {:.2} decades", (last / first).log10())));
    }
    let xs: Vec<f64> = reports.iter().map(|r| r.x_or_t).collect();
    let ys: Vec<f64> = reports
        .iter()
        .map(|r| r.abs_error / r.x_or_t.ln().powi(r.predicted_order.log_power as i32))
        .collect();
    Ok(log_log_slope(&xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn predicted_orders_follow_case_split() {
        let st = EvalSettings::default();
        let r = approx_thm31(&ArgumentPair::new(c(2.0, 0.0), c(0.8, 10.0)), 100.0, 2.0 * std::f64::consts::PI, &st).unwrap();
        assert_eq!(r.predicted_order, PredictedOrder { exponent: -0.8, log_power: 0 });
        let r = approx_thm31(&ArgumentPair::new(c(1.0, 0.0), c(1.1, 10.0)), 100.0, 2.0 * std::f64::consts::PI, &st).unwrap();
        assert_eq!(r.predicted_order, PredictedOrder { exponent: -1.1, log_power: 1 });
        assert_eq!(case_split(1.0, 0.9), PredictedOrder { exponent: -0.9, log_power: 1 });
        assert!((case_split(0.8, 0.9).exponent + 0.7).abs() < 1e-15);
        assert_eq!(case_split(1.2, 0.7), PredictedOrder { exponent: -0.7, log_power: 0 });
        assert_eq!(case_split(1.0, 0.8), PredictedOrder { exponent: -0.8, log_power: 1 });
    }

    #[test]
    fn abs_error_is_exact_difference() {
        let st = EvalSettings::default();
        let r = approx_thm53(&ArgumentPair::new(c(1.2, 0.0), c(0.7, 100.0)), &st).unwrap();
        assert_eq!(r.abs_error, (r.approximant - r.reference).norm());
        assert_eq!(r.x_or_t, 100.0);
    }

    #[test]
    fn thm31_error_small_in_absolute_convergence() {
        let st = EvalSettings::default();
        let r = approx_thm31(&ArgumentPair::new(c(2.0, 0.0), c(2.0, 0.0)), 1000.0, 2.0, &st).unwrap();
        assert!(r.abs_error < 1e-4, "{}", r.abs_error);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let st = EvalSettings::default();
        let p = ArgumentPair::new(c(2.0, 0.0), c(0.8, 1000.0));
        assert!(matches!(approx_thm31(&p, 100.0, 2.0, &st), Err(DzetaError::Domain(_))));
        let p = ArgumentPair::new(c(0.5, 0.0), c(0.8, 10.0));
        assert!(matches!(approx_thm31(&p, 100.0, 2.0, &st), Err(DzetaError::Domain(_))));
        let p = ArgumentPair::new(c(1.6, 0.0), c(0.8, 10.0));
        assert!(matches!(approx_thm53(&p, &st), Err(DzetaError::Domain(_))));
    }

    fn synthetic(errors: &[(f64, f64)]) -> Vec<ApproxReport> {
        errors
            .iter()
            .map(|&(x, e)| ApproxReport {
                approximant: c(e, 0.0),
                reference: c(0.0, 0.0),
                abs_error: e,
                predicted_order: PredictedOrder { exponent: 0.0, log_power: 0 },
                x_or_t: x,
            })
            .collect()
    }

    #[test]
    fn fit_of_constant_errors_is_flat() {
        let r = synthetic(&[(10.0, 0.3), (30.0, 0.3), (100.0, 0.3), (300.0, 0.3), (1000.0, 0.3)]);
        assert!(error_exponent_fit(&r).unwrap().abs() < 1e-14);
    }

    #[test]
    fn fit_recovers_power_law() {
        let pts: Vec<(f64, f64)> = (0..8).map(|i| {
            let x = 10f64.powf(2.0 + 0.3 * i as f64);
            (x, 5.0 * x.powf(-0.8))
        }).collect();
        assert!((error_exponent_fit(&synthetic(&pts)).unwrap() + 0.8).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_thin_data() {
        let r = synthetic(&[(10.0, 1.0), (20.0, 1.0), (30.0, 1.0), (40.0, 1.0), (50.0, 1.0)]);
        assert!(matches!(error_exponent_fit(&r), Err(DzetaError::InsufficientData(_))));
        let r = synthetic(&[(10.0, 1.0), (20.0, 1.0)]);
        assert!(matches!(error_exponent_fit(&r), Err(DzetaError::InsufficientData(_))));
    }
}
