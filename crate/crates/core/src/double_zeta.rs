//! ζ₂ in its region of absolute convergence, the mean-square coefficient
//! ζ₂^[2], and the harmonic-product (stuffle) check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DzetaError, Result};
use crate::msums::shifted_zeta_tail;
use crate::settings::{check_finite, EvalResult, EvalSettings, Route};
use crate::special::{hurwitz_zeta, hurwitz_zeta_jet, riemann_zeta, Bounded, BERNOULLI_2K, BERNOULLI_2K_OVER_FACT, EULER_GAMMA};
use crate::sum::ComplexSum;
use crate::ComplexValue;

/// The argument pair (s₀, s) of ζ₂(s₀, s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgumentPair {
    pub s0: ComplexValue,
    pub s: ComplexValue,
}

impl ArgumentPair {
    pub fn new(s0: ComplexValue, s: ComplexValue) -> Self {
        Self { s0, s }
    }

    pub fn conj(&self) -> Self {
        Self { s0: self.s0.conj(), s: self.s.conj() }
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        check_finite("s0", self.s0)?;
        check_finite("s", self.s)
    }
}

fn pow_neg(k: f64, s: Complex64) -> Complex64 {
    (-s * k.ln()).exp()
}

pub(crate) fn explicit_length(cutoff: usize, a: Complex64, b: Complex64) -> usize {
    cutoff.max((2.0 * a.norm() + 2.0 * b.norm() + 40.0).ceil() as usize)
}

/// Upper bound for Σ_{k>K} |H_{k−1}(s₀)| k^{-σ}.
fn abs_tail_majorant(sigma0: f64, sigma: f64, k: usize) -> f64 {
    let kf = k as f64;
    let base = kf.powf(1.0 - sigma) / (sigma - 1.0);
    if sigma0 > 1.0 {
        // H_{k-1}(σ₀) ≤ 1 + 1/(σ₀−1)
        (1.0 + 1.0 / (sigma0 - 1.0)) * base
    } else if sigma0 == 1.0 {
        base * (1.0 + kf.ln() + 1.0 / (sigma - 1.0))
    } else {
        let d = sigma0 + sigma - 2.0;
        base + kf.powf(2.0 - sigma0 - sigma) / ((1.0 - sigma0) * d)
    }
}

/// ζ₂(s₀, s) = Σ_{k≥2} H_{k−1}(s₀) k^{-s} summed explicitly to K with the
/// remainder in closed form.
pub fn zeta2_direct(p: &ArgumentPair, settings: &EvalSettings) -> Result<EvalResult> {
    settings.validate()?;
    p.check_finite()?;
    let (s0, s) = (p.s0, p.s);
    if !(s.re > 1.0 && s0.re + s.re > 2.0) {
        return Err(DzetaError::Domain(format!(
            "direct evaluation needs Re s > 1 and Re(s0+s) > 2, got s0 = {s0}, s = {s}"
        )));
    }
    let k_max = explicit_length(settings.k_cutoff, s0, s);
    let mut h = ComplexSum::new();
    let mut acc = ComplexSum::new();
    for k in 2..=k_max {
        h.add(pow_neg((k - 1) as f64, s0));
        acc.add(h.value() * pow_neg(k as f64, s));
    }
    h.add(pow_neg(k_max as f64, s0));
    let hk = h.value();
    let z = hurwitz_zeta(s, k_max as f64 + 1.0)?.scale(hk);
    let tail = z + shifted_zeta_tail(s0, s, 0.0, k_max)?;
    let rounding = 4.0 * f64::EPSILON * (acc.mass() + abs_tail_majorant(s0.re, s.re, k_max));
    let value = acc.value() + tail.value;
    let est_error = tail.err + rounding;
    finish(value, est_error, Route::Direct, k_max, settings)
}

pub(crate) fn finish(value: Complex64, est_error: f64, route: Route, terms: usize, settings: &EvalSettings) -> Result<EvalResult> {
    check_finite("value", value)?;
    if !est_error.is_finite() || est_error > settings.tol * value.norm().max(1.0) {
        return Err(DzetaError::Convergence(format!(
            "{route} route error estimate {est_error:e} exceeds tol {:e}",
            settings.tol
        )));
    }
    Ok(EvalResult { value, est_error, route, terms_used: terms })
}

const BOUNDARY_MARGIN: f64 = 1e-12;

/// ζ₂^[2](s₀, w) = Σ_{k≥2} |Σ_{m<k} m^{-s₀}|² k^{-w}.
pub fn zeta2_sq(s0: ComplexValue, w: ComplexValue, settings: &EvalSettings) -> Result<EvalResult> {
    settings.validate()?;
    check_finite("s0", s0)?;
    check_finite("w", w)?;
    let inside = if s0.re >= 1.0 {
        w.re > 1.0 + BOUNDARY_MARGIN
    } else {
        2.0 * s0.re + w.re > 3.0 + BOUNDARY_MARGIN
    };
    if !inside {
        return Err(DzetaError::Domain(format!(
            "zeta2_sq diverges at s0 = {s0}, w = {w} (boundary excluded)"
        )));
    }
    let k_max = explicit_length(settings.k_cutoff, s0, w);
    let mut h = ComplexSum::new();
    let mut acc = ComplexSum::new();
    for k in 2..=k_max {
        h.add(pow_neg((k - 1) as f64, s0));
        acc.add(pow_neg(k as f64, w) * h.value().norm_sqr());
    }
    h.add(pow_neg(k_max as f64, s0));
    let tail = if s0 == Complex64::new(1.0, 0.0) {
        sq_tail_at_one(w, k_max)?
    } else {
        sq_tail(s0, w, h.value(), k_max)?
    };
    let mut value = acc.value() + tail.value;
    if w.im == 0.0 {
        value.im = 0.0;
    }
    let est_error = tail.err + acc.rounding_bound() + 4.0 * f64::EPSILON * value.norm();
    finish(value, est_error, Route::Direct, k_max, settings)
}

/// Σ_{k>K} |Z − h(k)|² k^{-w} where h(k) = ζ(s₀, k) is expanded in powers of k.
fn sq_tail(s0: Complex64, w: Complex64, hk: Complex64, k_max: usize) -> Result<Bounded> {
    let a = k_max as f64 + 1.0;
    let z = hk + hurwitz_zeta(s0, a)?.value;
    let mut terms: Vec<(Complex64, Complex64)> = vec![
        ((s0 - 1.0).inv(), s0 - 1.0),
        (Complex64::new(0.5, 0.0), s0),
    ];
    let mut poch = s0;
    let mut dropped = 0.0;
    let size = |c: Complex64, e: Complex64| c.norm() * a.powf(-e.re);
    for (j, beta) in BERNOULLI_2K_OVER_FACT.iter().enumerate() {
        let e = s0 + (2 * j + 1) as f64;
        let c = poch * *beta;
        let mag = size(c, e);
        dropped = mag;
        if mag < 1e-18 * size(terms[0].0, terms[0].1) {
            break;
        }
        if terms.len() > 2 && mag > size(terms[terms.len() - 1].0, terms[terms.len() - 1].1) {
            break;
        }
        terms.push((c, e));
        let jj = 2.0 * (j + 1) as f64;
        poch *= (s0 + jj - 1.0) * (s0 + jj);
    }
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let zw = hurwitz_zeta(w, a)?;
    acc.add(zw.value * z.norm_sqr());
    err += zw.err * z.norm_sqr();
    for &(c, e) in &terms {
        let p1 = hurwitz_zeta(w + e, a)?;
        let p2 = hurwitz_zeta(w + e.conj(), a)?;
        acc.add(-(z.conj() * c * p1.value + z * c.conj() * p2.value));
        err += z.norm() * c.norm() * (p1.err + p2.err);
    }
    for &(cp, ep) in &terms {
        for &(cq, eq) in &terms {
            let q = hurwitz_zeta(w + ep + eq.conj(), a)?;
            acc.add(cp * cq.conj() * q.value);
            err += (cp * cq).norm() * q.err;
        }
    }
    // dropped expansion terms perturb h(k) by at most `dropped` for k > K
    let h_bound = z.norm() + terms.iter().map(|&(c, e)| size(c, e)).sum::<f64>();
    let weight = hurwitz_zeta(Complex64::new(w.re, 0.0), a)?.value.re.abs();
    err += 2.0 * dropped * h_bound * weight;
    Ok(Bounded::new(acc.value(), err + acc.rounding_bound()))
}

/// s₀ = 1: H_{k−1} = log k + γ − 1/(2k) − Σ_j B_{2j}/(2j) k^{-2j}.
fn sq_tail_at_one(w: Complex64, k_max: usize) -> Result<Bounded> {
    let a = k_max as f64 + 1.0;
    let mut c = vec![EULER_GAMMA, -0.5];
    for (j, b) in BERNOULLI_2K.iter().take(6).enumerate() {
        let jj = 2 * (j + 1);
        while c.len() < jj {
            c.push(0.0);
        }
        c.push(-b / jj as f64);
    }
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let jet = hurwitz_zeta_jet(w, a)?;
    acc.add(jet[2].value);
    err += jet[2].err;
    for (p, cp) in c.iter().enumerate() {
        if *cp == 0.0 {
            continue;
        }
        let jp = hurwitz_zeta_jet(w + p as f64, a)?;
        acc.add(-2.0 * *cp * jp[1].value);
        err += 2.0 * cp.abs() * jp[1].err;
        for (q, cq) in c.iter().enumerate() {
            if *cq == 0.0 {
                continue;
            }
            let z = hurwitz_zeta(w + (p + q) as f64, a)?;
            acc.add(z.value * (cp * cq));
            err += (cp * cq).abs() * z.err;
        }
    }
    // first omitted coefficient B_14/14 k^{-14}
    err += 2.0 * a.ln() * (BERNOULLI_2K[6].abs() / 14.0) * a.powf(-13.0 - w.re);
    Ok(Bounded::new(acc.value(), err + acc.rounding_bound()))
}

/// |ζ(s₀)ζ(s) − ζ₂(s₀, s) − ζ₂(s, s₀) − ζ(s₀+s)|.
pub fn stuffle_residual(s0: ComplexValue, s: ComplexValue, settings: &EvalSettings) -> Result<f64> {
    settings.validate()?;
    if !(s0.re > 1.0 && s.re > 1.0) {
        return Err(DzetaError::Domain(format!(
            "stuffle identity needs both orderings absolutely convergent, got s0 = {s0}, s = {s}"
        )));
    }
    let a = zeta2_direct(&ArgumentPair::new(s0, s), settings)?.value;
    let b = zeta2_direct(&ArgumentPair::new(s, s0), settings)?.value;
    let lhs = riemann_zeta(s0, settings)? * riemann_zeta(s, settings)?;
    let rhs = a + b + riemann_zeta(s0 + s, settings)?;
    Ok((lhs - rhs).norm())
}
