//! Analytic continuation of ζ₂ beyond absolute convergence.
//!
//! Two routes are available.  The Euler–Maclaurin route writes
//! ζ₂ = A₁ − A₂ − A₃ − A₄ with a split point N in the inner sum; it is valid
//! for Re s > 0 and Re(s₀+s) > 2.  The Mellin–Barnes route keeps A₁, A₃, A₄
//! and replaces the A₂ sum by g(s₀, s; x) + Y₂ + Y₃, where g is continued
//! through a vertical contour integral; it reaches 0 < Re s₀ < 3/2,
//! Re s > 1/2, Re(s₀+s) > 1.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::double_zeta::{finish, zeta2_direct, ArgumentPair};
use crate::error::{DzetaError, Result};
use crate::msums::{
    pair_tail, sawtooth_pair_tail, sawtooth_partial, sawtooth_piece, sawtooth_tail, shifted_zeta_tail,
};
use crate::quadrature::{integrate_adaptive, GaussLegendre};
use crate::settings::{check_finite, EvalResult, EvalSettings, Route};
use crate::special::{digamma, log_gamma, polygamma, Bounded, BERNOULLI_2K_OVER_FACT, EULER_GAMMA};
use crate::sum::ComplexSum;
use crate::ComplexValue;

/// Where a pair (s₀, s) sits relative to the convergence regions and the
/// singular locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionClass {
    AbsolutelyConvergent,
    EMStrip,
    MBStrip,
    Singular,
    OutOfDomain,
}

/// The reason a point is singular, if it is.
pub fn singular_reason(p: &ArgumentPair, radius: f64) -> Option<String> {
    if (p.s - 1.0).norm() < radius {
        return Some("singular locus s=1".to_string());
    }
    let z = p.s0 + p.s;
    let n = z.re.round();
    if n <= 2.0 && (z - n).norm() < radius {
        return Some(format!("singular locus s0+s={n}"));
    }
    None
}

pub fn classify_region(p: &ArgumentPair, settings: &EvalSettings) -> RegionClass {
    if !(p.s0.re.is_finite() && p.s0.im.is_finite() && p.s.re.is_finite() && p.s.im.is_finite()) {
        return RegionClass::OutOfDomain;
    }
    if singular_reason(p, settings.singular_radius).is_some() {
        return RegionClass::Singular;
    }
    let (sigma0, sigma) = (p.s0.re, p.s.re);
    if sigma > 1.0 && sigma0 + sigma > 2.0 {
        RegionClass::AbsolutelyConvergent
    } else if sigma > 0.0 && sigma0 + sigma > 2.0 {
        RegionClass::EMStrip
    } else if sigma0 > 0.0 && sigma0 < 1.5 && sigma > 0.5 && sigma0 + sigma > 1.0 {
        RegionClass::MBStrip
    } else {
        RegionClass::OutOfDomain
    }
}

fn singular_error(p: &ArgumentPair, settings: &EvalSettings) -> DzetaError {
    let reason = singular_reason(p, settings.singular_radius).unwrap_or_default();
    if (p.s - 1.0).norm() < settings.singular_radius {
        DzetaError::Pole(reason)
    } else {
        DzetaError::Singular(reason)
    }
}

/// Number of explicit m terms for split point x; the tail expansions then
/// converge geometrically with ratio at most 1/5.
pub(crate) fn m_length(settings: &EvalSettings, x: f64, s0: Complex64, s: Complex64) -> usize {
    let by_x = (4.0 * x).ceil() as usize;
    let by_size = (0.5 * (s0.norm() + s.norm())).ceil() as usize + 60;
    settings.m_cutoff.max(by_x).max(by_size)
}

/// The three N-dependent sums shared by both routes, each with its m-tail.
struct SharedSums {
    a1: Bounded,
    a2: Bounded,
    a3: Bounded,
    a4: Bounded,
    terms: usize,
}

fn weights(s0: Complex64, m_max: usize) -> Vec<Complex64> {
    (0..=m_max).map(|m| if m == 0 { Complex64::new(0.0, 0.0) } else { (-s0 * (m as f64).ln()).exp() }).collect()
}

fn shared_sums(s0: Complex64, s: Complex64, n: usize, settings: &EvalSettings, with_a2: bool) -> Result<SharedSums> {
    let nf = n as f64;
    let m_max = m_length(settings, nf, s0, s);
    let top = m_max + n;
    let c = weights(s0, m_max);
    let mut pw = vec![Complex64::new(0.0, 0.0); top + 1];
    let mut prefix = vec![Complex64::new(0.0, 0.0); top + 1];
    let mut run = ComplexSum::new();
    for j in 1..=top {
        pw[j] = (-s * (j as f64).ln()).exp();
        run.add(pw[j]);
        prefix[j] = run.value();
    }
    let e = s + 1.0;
    // I(a) = ∫_a^∞ ψ(y) y^{-s-1} dy by downward recursion from a = top + 1
    let start = sawtooth_tail(e, (top + 1) as f64);
    let mut sawtooth = vec![Complex64::new(0.0, 0.0); top + 2];
    sawtooth[top + 1] = start.value;
    let mut piece_mass = 0.0;
    for a in (n + 1..=top).rev() {
        let piece = sawtooth_piece(a as f64, e);
        piece_mass += piece.norm();
        sawtooth[a] = sawtooth[a + 1] + piece;
    }
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let mut a1 = ComplexSum::new();
    let mut a2 = ComplexSum::new();
    let mut a3 = ComplexSum::new();
    let mut a4 = ComplexSum::new();
    let mut a1_prefix_err = 0.0;
    let mut weight_mass = 0.0;
    for m in 1..=m_max {
        let a = m + n;
        a1.add(c[m] * (prefix[a] - prefix[m]));
        a1_prefix_err += c[m].norm() * (prefix[a].norm() + prefix[m].norm());
        if with_a2 {
            a2.add(c[m] * pw[a] * a as f64);
        }
        a3.add(c[m] * sawtooth[a]);
        a4.add(c[m] * pw[a]);
        weight_mass += c[m].norm();
    }
    let eps = f64::EPSILON;
    let a1_tail = shifted_zeta_tail(s0, s, 0.0, m_max)? - shifted_zeta_tail(s0, s, nf, m_max)?;
    let a1_total = Bounded::new(a1.value(), a1.rounding_bound() + 4.0 * eps * a1_prefix_err) + a1_tail;
    let a2_total = if with_a2 {
        let t = pair_tail(s0, s - 1.0, nf, m_max)?;
        Bounded::new(a2.value(), a2.rounding_bound()).scale(one_minus_s.inv()) + t.scale(one_minus_s.inv())
    } else {
        Bounded::exact(Complex64::new(0.0, 0.0))
    };
    let sawtooth_err = start.err + 64.0 * eps * piece_mass;
    let a3_explicit = Bounded::new(a3.value(), a3.rounding_bound() + weight_mass * sawtooth_err);
    let a3_total = (a3_explicit + sawtooth_pair_tail(s0, e, nf, m_max)?).scale(s);
    let a4_total = (Bounded::new(a4.value(), a4.rounding_bound()) + pair_tail(s0, s, nf, m_max)?)
        .scale(Complex64::new(0.5, 0.0));
    Ok(SharedSums { a1: a1_total, a2: a2_total, a3: a3_total, a4: a4_total, terms: m_max * (n + 1) })
}

/// ζ₂ by the Euler–Maclaurin decomposition A₁ − A₂ − A₃ − A₄ with split N.
pub fn zeta2_em(p: &ArgumentPair, n: usize, settings: &EvalSettings) -> Result<EvalResult> {
    settings.validate()?;
    p.check_finite()?;
    match classify_region(p, settings) {
        RegionClass::AbsolutelyConvergent | RegionClass::EMStrip => {}
        RegionClass::Singular => return Err(singular_error(p, settings)),
        other => {
            return Err(DzetaError::Domain(format!(
                "Euler-Maclaurin route needs Re s > 0 and Re(s0+s) > 2, point is {other:?}"
            )))
        }
    }
    if n < 1 {
        return Err(DzetaError::Domain("split point N must be at least 1".into()));
    }
    let sums = shared_sums(p.s0, p.s, n, settings, true)?;
    let total = sums.a1 - sums.a2 - sums.a3 - sums.a4;
    finish(total.value, total.err, Route::EulerMaclaurin, sums.terms, settings)
}

/// ∫_a^∞ (y − [y] − ½) y^{-s-1} dy for real a ≥ 1.
pub fn em_sawtooth_integral(a: f64, s: ComplexValue) -> Result<ComplexValue> {
    check_finite("s", s)?;
    if !(a >= 1.0 && a.is_finite()) {
        return Err(DzetaError::Domain(format!("sawtooth integral needs a ≥ 1, got {a}")));
    }
    if s.re <= 0.0 {
        return Err(DzetaError::Domain(format!("sawtooth integral needs Re s > 0, got {s}")));
    }
    let e = s + 1.0;
    let first = a.ceil();
    let mut acc = ComplexSum::new();
    acc.add(sawtooth_partial(a, first, e));
    let span = (2.0 * s.norm()).ceil().max(200.0);
    let end = first + span;
    let mut l = end - 1.0;
    let mut pieces = Vec::with_capacity(span as usize);
    while l >= first {
        pieces.push(sawtooth_piece(l, e));
        l -= 1.0;
    }
    let mut total = ComplexSum::new();
    total.add(sawtooth_tail(e, end).value);
    for p in pieces {
        total.add(p);
    }
    total.add(acc.value());
    Ok(total.value())
}

fn mb_integrand(lambda_ln: Complex64, s: Complex64, c: f64, ln_gamma_s: Complex64, y: f64) -> Complex64 {
    let z = Complex64::new(c, y);
    match (log_gamma(s + z), log_gamma(-z)) {
        (Ok(a), Ok(b)) => (a + b - ln_gamma_s + z * lambda_ln).exp(),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// (2πi)^{-1} ∫_{(c)} Γ(s+z)Γ(−z)Γ(s)^{-1} λ^z dz, which equals (1+λ)^{-s}.
pub fn mellin_barnes_pow(
    lambda: ComplexValue,
    s: ComplexValue,
    c: f64,
    settings: &EvalSettings,
) -> Result<ComplexValue> {
    settings.validate()?;
    check_finite("lambda", lambda)?;
    check_finite("s", s)?;
    if s.re <= 0.0 {
        return Err(DzetaError::Domain(format!("Mellin-Barnes formula needs Re s > 0, got {s}")));
    }
    if lambda.norm() == 0.0 || lambda.arg().abs() >= PI {
        return Err(DzetaError::Domain(format!("Mellin-Barnes formula needs λ off (-∞, 0], got {lambda}")));
    }
    if !(c > -s.re && c < 0.0) {
        return Err(DzetaError::Domain(format!("contour abscissa {c} outside (-Re s, 0)")));
    }
    let ln_l = lambda.ln();
    let lg = log_gamma(s)?;
    let f = |y: f64| mb_integrand(ln_l, s, c, lg, y);
    let y0 = -0.5 * s.im;
    let width = 2.0;
    let panel_tol = settings.tol * 1e-2;
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    for dir in [1.0, -1.0] {
        let mut quiet = 0;
        let mut k = 0usize;
        loop {
            let (a, b) = if dir > 0.0 {
                (y0 + k as f64 * width, y0 + (k + 1) as f64 * width)
            } else {
                (y0 - (k + 1) as f64 * width, y0 - k as f64 * width)
            };
            let r = integrate_adaptive(&f, a, b, panel_tol, 20);
            acc.add(r.value);
            err += r.err;
            let beyond = if dir > 0.0 { a > y0.abs() + s.im.abs() } else { b < -y0.abs() - s.im.abs() };
            if r.value.norm() < 1e-18 * acc.value().norm().max(1e-300) && beyond {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= 3 || k > 200_000 {
                break;
            }
            k += 1;
        }
    }
    let value = acc.value() / (2.0 * PI);
    if err / (2.0 * PI) > settings.tol.max(1e-15) * value.norm().max(1.0) {
        return Err(DzetaError::Convergence(format!("Mellin-Barnes quadrature error {err:e}")));
    }
    Ok(value)
}

/// g(s₀, s; x) = R₁ + R₂ + R₃ together with the quadrature bound on R₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GDecomposition {
    pub r1: ComplexValue,
    pub r2: ComplexValue,
    pub r3: ComplexValue,
    pub x: f64,
    /// Quadrature plus truncation bound on r3.
    pub r3_error: f64,
    /// True when R₁ + R₂ came from the s₀ = 1 expansion; r1 then holds the
    /// sum and r2 is zero.
    pub s0_one_branch: bool,
}

impl GDecomposition {
    pub fn total(&self) -> ComplexValue {
        self.r1 + self.r2 + self.r3
    }
}

const S0_ONE_RADIUS: f64 = 1e-4;

fn check_g_domain(s0: Complex64, s: Complex64, x: f64, settings: &EvalSettings) -> Result<()> {
    check_finite("s0", s0)?;
    check_finite("s", s)?;
    if !(s0.re > 0.0 && s0.re < 1.5) {
        return Err(DzetaError::Domain(format!("g needs 0 < Re s0 < 3/2, got {s0}")));
    }
    if s.re <= 0.5 {
        return Err(DzetaError::Domain(format!("g needs Re s > 1/2, got {s}")));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(DzetaError::Domain(format!("g needs x ≥ 1, got {x}")));
    }
    let p = ArgumentPair::new(s0, s);
    if singular_reason(&p, settings.singular_radius).is_some() {
        return Err(singular_error(&p, settings));
    }
    Ok(())
}

/// The continued A₂-type integral (1−s)^{-1} ∫_1^∞ y^{-s₀}(y+x)^{1−s} dy.
pub fn g_function(s0: ComplexValue, s: ComplexValue, x: f64, settings: &EvalSettings) -> Result<GDecomposition> {
    settings.validate()?;
    check_g_domain(s0, s, x, settings)?;
    let ln_x = x.ln();
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let pre = (one_minus_s * ln_x).exp() / one_minus_s;
    let delta = s0 - 1.0;
    let lg_s1 = log_gamma(s - 1.0)?;
    let (r1, r2, branch) = if delta.norm() < S0_ONE_RADIUS {
        let z2 = PI * PI / 6.0;
        let z3 = 1.202_056_903_159_594_3;
        let z4 = PI.powi(4) / 90.0;
        let w = s - 1.0;
        let phi_over_delta = (digamma(w)? + EULER_GAMMA - ln_x)
            + delta * (polygamma(1, w)? / 2.0 + z2 / 2.0)
            + delta * delta * (polygamma(2, w)? / 6.0 + z3 / 3.0)
            + delta * delta * delta * (polygamma(3, w)? / 24.0 + z4 / 4.0);
        let phi = phi_over_delta * delta;
        let sum = -phi_over_delta * crate::special::expm1_over(phi);
        (pre * sum, Complex64::new(0.0, 0.0), true)
    } else {
        let r1 = pre / delta;
        let r2 = pre
            * ((-delta) * ln_x + log_gamma(s + s0 - 2.0)? + log_gamma(Complex64::new(1.0, 0.0) - s0)? - lg_s1).exp();
        (r1, r2, false)
    };
    let half_height = settings.contour_half_height.max(s.im.abs() + 40.0);
    let (integral, err) = r3_integral(s0, s, ln_x, lg_s1, half_height, settings)?;
    let r3 = pre * integral / (2.0 * PI);
    Ok(GDecomposition {
        r1,
        r2,
        r3,
        x,
        r3_error: pre.norm() * err / (2.0 * PI),
        s0_one_branch: branch,
    })
}

fn r3_integrand(s0: Complex64, s: Complex64, ln_x: f64, lg_s1: Complex64, y: f64) -> Complex64 {
    let a = log_gamma(s + Complex64::new(-0.5, y));
    let b = log_gamma(Complex64::new(-0.5, -y));
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let expo = a + b - lg_s1 - Complex64::new(0.5, y) * ln_x;
            expo.exp() / (s0 - Complex64::new(1.5, y))
        }
        _ => Complex64::new(0.0, 0.0),
    }
}

fn r3_integral(
    s0: Complex64,
    s: Complex64,
    ln_x: f64,
    lg_s1: Complex64,
    half_height: f64,
    settings: &EvalSettings,
) -> Result<(Complex64, f64)> {
    let f = |y: f64| r3_integrand(s0, s, ln_x, lg_s1, y);
    let panels = (half_height).ceil() as usize;
    let width = 2.0 * half_height / panels as f64;
    let scale_guess = f(-0.5 * s.im).norm().max(f(0.0).norm()).max(1e-300);
    // log_gamma carries ~1e-14 relative noise at large height, which sets a
    // floor below which bisection stops paying off
    let panel_tol = (settings.tol * 0.05 * scale_guess.max(1.0) / panels as f64).max(2e-13 * scale_guess * width);
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    for k in 0..panels {
        let a = -half_height + k as f64 * width;
        let r = integrate_adaptive(&f, a, a + width, panel_tol, 14);
        acc.add(r.value);
        err += r.err;
    }
    // the integrand decays at least like exp(-π|y|/2) past the ends
    let edge = f(half_height).norm() + f(-half_height).norm();
    err += edge * 2.0 / PI;
    Ok((acc.value(), err + acc.rounding_bound()))
}

/// F^{(p)}(y) for F(y) = y^{-s₀}(y+x)^{1−s}, p = 1, 3, 5, …
fn leibniz_derivatives(s0: Complex64, s: Complex64, x: f64, y: f64, max_order: usize) -> Vec<Complex64> {
    let base = (-s0 * y.ln() + (1.0 - s) * (y + x).ln()).exp();
    let mut poch_a = vec![Complex64::new(1.0, 0.0); max_order + 1];
    let mut poch_b = vec![Complex64::new(1.0, 0.0); max_order + 1];
    for i in 1..=max_order {
        poch_a[i] = poch_a[i - 1] * (s0 + (i - 1) as f64);
        poch_b[i] = poch_b[i - 1] * (s - 1.0 + (i - 1) as f64);
    }
    let mut out = Vec::with_capacity(max_order + 1);
    for order in 0..=max_order {
        let mut acc = ComplexSum::new();
        let mut binom = 1.0;
        for i in 0..=order {
            let term = poch_a[i] * poch_b[order - i] * (binom * y.powi(-(i as i32)) * (y + x).powi(-((order - i) as i32)));
            acc.add(term);
            binom = binom * (order - i) as f64 / (i + 1) as f64;
        }
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        out.push(base * acc.value() * sign);
    }
    out
}

/// Y₂ + Y₃ of the A₂ continuation, with an error bound.
fn y23_bounded(s0: Complex64, s: Complex64, x: f64) -> Result<Bounded> {
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let y3 = ((one_minus_s) * (1.0 + x).ln()).exp() / (2.0 * one_minus_s);
    let l_end = (20.0f64)
        .max(4.0 * s0.norm() + 10.0)
        .max(2.5 * s.norm() - x + 10.0)
        .ceil() as usize;
    let fprime = |y: f64| {
        let f = (-s0 * y.ln() + one_minus_s * (y + x).ln()).exp();
        -f * (s0 / y + (s - 1.0) / (y + x))
    };
    let mut acc = ComplexSum::new();
    let mut quad_err = 0.0;
    for k in 1..l_end {
        let kf = k as f64;
        let osc = s.im.abs() / (kf + x) + s0.im.abs() / kf + (s0.norm() + s.norm()) / (kf + 1.0);
        let nodes = (10.0 + osc.ceil()).min(128.0) as usize;
        let g = |y: f64| fprime(y) * (y - kf - 0.5);
        let rule = GaussLegendre::cached(nodes);
        let v = rule.integrate(&g, kf, kf + 1.0);
        let check = GaussLegendre::cached(nodes + 6).integrate(&g, kf, kf + 1.0);
        quad_err += (v - check).norm();
        acc.add(check);
    }
    // ∫_L^∞ ψ F' = −Σ_k β_k F^{(2k−1)}(L)
    let lf = l_end as f64;
    let derivs = leibniz_derivatives(s0, s, x, lf, 2 * BERNOULLI_2K_OVER_FACT.len());
    let mut tail = ComplexSum::new();
    let mut last = f64::INFINITY;
    let mut tail_err = 0.0;
    for (k, beta) in BERNOULLI_2K_OVER_FACT.iter().enumerate() {
        let term = -derivs[2 * k + 1] * *beta;
        let mag = term.norm();
        if mag > last {
            tail_err = last;
            break;
        }
        tail.add(term);
        last = mag;
        tail_err = mag;
        if mag < 1e-18 * tail.mass() {
            break;
        }
    }
    let y2 = (acc.value() + tail.value()) / one_minus_s;
    let err = (quad_err + tail_err + acc.rounding_bound() + tail.rounding_bound()) / one_minus_s.norm();
    Ok(Bounded::new(y2 + y3, err))
}

/// Y₂ + Y₃ = Σ_m m^{-s₀}(m+x)^{1−s}/(1−s) − g(s₀, s; x).
pub fn y23_terms(s0: ComplexValue, s: ComplexValue, x: f64, settings: &EvalSettings) -> Result<ComplexValue> {
    settings.validate()?;
    check_finite("s0", s0)?;
    check_finite("s", s)?;
    if (s - 1.0).norm() < settings.singular_radius {
        return Err(DzetaError::Pole("Y terms have a pole at s = 1".into()));
    }
    if !(s0.re > 0.0 && s0.re + s.re > 1.0) {
        return Err(DzetaError::Domain(format!("Y terms need Re s0 > 0 and Re(s0+s) > 1, got s0 = {s0}, s = {s}")));
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(DzetaError::Domain(format!("Y terms need x ≥ 1, got {x}")));
    }
    let r = y23_bounded(s0, s, x)?;
    if r.err > settings.tol * r.value.norm().max(1.0) {
        return Err(DzetaError::Convergence(format!("Y terms error estimate {:e}", r.err)));
    }
    Ok(r.value)
}

/// ζ₂ by the Euler–Maclaurin decomposition with A₂ replaced by its
/// Mellin–Barnes continuation.  x is used as the integer split point.
pub fn zeta2_mb(p: &ArgumentPair, x: f64, settings: &EvalSettings) -> Result<EvalResult> {
    settings.validate()?;
    p.check_finite()?;
    match classify_region(p, settings) {
        RegionClass::Singular => return Err(singular_error(p, settings)),
        RegionClass::OutOfDomain => {
            return Err(DzetaError::Domain(format!("no continuation route reaches s0 = {}, s = {}", p.s0, p.s)))
        }
        _ => {}
    }
    if !(x >= 1.0 && x.is_finite()) {
        return Err(DzetaError::Domain(format!("x must be at least 1, got {x}")));
    }
    let n = x.floor() as usize;
    let xf = n as f64;
    let g = g_function(p.s0, p.s, xf, settings)?;
    let y = y23_bounded(p.s0, p.s, xf)?;
    let sums = shared_sums(p.s0, p.s, n, settings, false)?;
    let a2 = Bounded::new(g.total(), g.r3_error) + y;
    let total = sums.a1 - a2 - sums.a3 - sums.a4;
    finish(total.value, total.err, Route::MellinBarnes, sums.terms, settings)
}

/// Split point used by the dispatcher for the Mellin–Barnes route.
pub fn default_mb_x(p: &ArgumentPair, settings: &EvalSettings) -> f64 {
    (settings.n_cutoff as f64).max(p.s.norm().ceil())
}

/// Evaluates ζ₂ by the cheapest route valid at the point.
pub fn zeta2_eval(p: &ArgumentPair, settings: &EvalSettings) -> Result<EvalResult> {
    settings.validate()?;
    p.check_finite()?;
    match classify_region(p, settings) {
        RegionClass::AbsolutelyConvergent => zeta2_direct(p, settings),
        RegionClass::EMStrip => zeta2_em(p, settings.n_cutoff, settings),
        RegionClass::MBStrip => zeta2_mb(p, default_mb_x(p, settings), settings),
        RegionClass::Singular => Err(singular_error(p, settings)),
        RegionClass::OutOfDomain => Err(DzetaError::Domain(format!(
            "s0 = {}, s = {} lies outside every continuation region",
            p.s0, p.s
        ))),
    }
}

/// Polynomial extrapolation of (h_i, f_i) to h = 0 by Neville's scheme.
pub(crate) fn neville_at_zero(h: &[f64], f: &[Complex64]) -> Complex64 {
    let mut p = f.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i + 1] * h[i] - p[i] * h[i + m]) / (h[i] - h[i + m]);
        }
    }
    p[0]
}

/// lim_{s→1} (s−1) ζ₂(s₀, s), extrapolated from s = 1 + δ.
pub fn residue_at_s1(s0: ComplexValue, settings: &EvalSettings) -> Result<ComplexValue> {
    settings.validate()?;
    check_finite("s0", s0)?;
    if s0.re <= 1.0 {
        return Err(DzetaError::Domain(format!("residue at s = 1 needs Re s0 > 1, got {s0}")));
    }
    let deltas: Vec<f64> = (0..7).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect();
    let mut vals = Vec::with_capacity(deltas.len());
    for &d in &deltas {
        let r = zeta2_eval(&ArgumentPair::new(s0, Complex64::new(1.0 + d, 0.0)), settings)?;
        vals.push(r.value * d);
    }
    let full = neville_at_zero(&deltas, &vals);
    let fewer = neville_at_zero(&deltas[..deltas.len() - 1], &vals[..vals.len() - 1]);
    if (full - fewer).norm() > 1e-7 * full.norm().max(1.0) {
        return Err(DzetaError::Convergence(format!(
            "residue extrapolation unstable: {full} vs {fewer}"
        )));
    }
    Ok(full)
}
