//! Complex log-gamma, digamma and polygamma, Hurwitz and Riemann zeta, and
//! the Euler constant.

use num_complex::Complex64;

use crate::error::{DzetaError, Result};
use crate::settings::EvalSettings;
use crate::sum::ComplexSum;
use crate::ComplexValue;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// B_2, B_4, ..., B_60.
pub(crate) const BERNOULLI_2K: [f64; 30] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
    8.416930475736826e+17,
    -4.0338071854059454e+19,
    2.1150748638081993e+21,
    -1.2086626522296526e+23,
    7.500866746076964e+24,
    -5.038778101481069e+26,
    3.6528776484818122e+28,
    -2.849876930245088e+30,
    2.3865427499683627e+32,
    -2.1399949257225335e+34,
];
/// B_{2k} / (2k)! for k = 1..=30.
pub(crate) const BERNOULLI_2K_OVER_FACT: [f64; 30] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
];

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

/// Number of unit shifts needed before the asymptotic series is accurate.
fn shift_count(z: Complex64) -> usize {
    let target = if z.im.abs() >= 15.0 { 0.0 } else { 12.0 };
    if z.re >= target {
        0
    } else {
        (target - z.re).ceil() as usize
    }
}

/// Principal branch of log Γ(z): the branch continuous on ℂ minus the
/// non-positive real axis, real on the positive reals.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(z) {
        return Err(DzetaError::Pole(format!("log_gamma at non-positive integer {}", z.re)));
    }
    let n = shift_count(z);
    let mut shift = ComplexSum::new();
    for k in 0..n {
        shift.add((z + k as f64).ln());
    }
    let w = z + n as f64;
    Ok(stirling_log_gamma(w) - shift.value())
}

fn stirling_log_gamma(w: Complex64) -> Complex64 {
    let ln_w = w.ln();
    let mut acc = ComplexSum::new();
    acc.add((w - 0.5) * ln_w);
    acc.add(-w);
    acc.add(Complex64::new(HALF_LN_2PI, 0.0));
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let k = (k + 1) as f64;
        let term = p * (b / (2.0 * k * (2.0 * k - 1.0)));
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        p *= inv2;
    }
    acc.value()
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(z) {
        return Err(DzetaError::Pole(format!("digamma at non-positive integer {}", z.re)));
    }
    let n = shift_count(z);
    let mut acc = ComplexSum::new();
    for k in 0..n {
        acc.add(-(z + k as f64).inv());
    }
    let w = z + n as f64;
    acc.add(w.ln());
    acc.add(-0.5 * w.inv());
    let inv2 = (w * w).inv();
    let mut p = inv2;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let term = -p * (b / (2.0 * (k + 1) as f64));
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        p *= inv2;
    }
    Ok(acc.value())
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// ψ^{(order)}(z) for order ≥ 1.
pub fn polygamma(order: u32, z: ComplexValue) -> Result<ComplexValue> {
    if order == 0 {
        return digamma(z);
    }
    if is_nonpositive_integer(z) {
        return Err(DzetaError::Pole(format!("polygamma at non-positive integer {}", z.re)));
    }
    let m = order as i32;
    let sign = if order % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{m+1}
    let m_fact = factorial(order);
    let n = shift_count(z) + order as usize;
    let mut acc = ComplexSum::new();
    // psi^(m)(z) = psi^(m)(z+n) - (-1)^m m! sum (z+k)^{-m-1}
    for k in 0..n {
        acc.add((z + k as f64).powi(-(m + 1)) * (sign * m_fact));
    }
    let w = z + n as f64;
    let inv = w.inv();
    acc.add(inv.powi(m) * (sign * factorial(order - 1)));
    acc.add(inv.powi(m + 1) * (sign * m_fact * 0.5));
    let inv2 = inv * inv;
    let mut p = inv.powi(m + 2);
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let k2 = 2 * (k as u32 + 1);
        let coef = b * factorial(k2 + order - 1) / factorial(k2);
        let term = p * (sign * coef);
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        p *= inv2;
    }
    Ok(acc.value())
}

/// (e^z − 1)/z, accurate near z = 0.
pub(crate) fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-2 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..=9 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: Complex64,
    pub err: f64,
}

impl Bounded {
    pub fn new(value: Complex64, err: f64) -> Self {
        Self { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self { value: self.value * c, err: self.err * c.norm() }
    }
}

impl std::ops::Add for Bounded {
    type Output = Bounded;
    fn add(self, o: Bounded) -> Bounded {
        Bounded::new(self.value + o.value, self.err + o.err)
    }
}

impl std::ops::Sub for Bounded {
    type Output = Bounded;
    fn sub(self, o: Bounded) -> Bounded {
        Bounded::new(self.value - o.value, self.err + o.err)
    }
}

/// Smallest base at which the Euler–Maclaurin tail of ζ(w, ·) is used.
fn em_base(w: Complex64) -> f64 {
    0.5 * w.norm() + 15.0
}

/// a^{w−1} ζ(w, a) from the Euler–Maclaurin tail alone. Requires
/// a ≥ 0.5|w| + 15 for full accuracy; the returned bound says how good it is.
pub(crate) fn hurwitz_normalized(w: Complex64, a: f64) -> Bounded {
    let inv_a = 1.0 / a;
    let inv_a2 = inv_a * inv_a;
    let mut acc = ComplexSum::new();
    acc.add((w - 1.0).inv());
    acc.add(Complex64::new(0.5 * inv_a, 0.0));
    // beta_j (w)_{2j-1} a^{-2j+1} a^{-1}... normalized by a^{w-1}: a^{-w-2j+1} * a^{w-1} = a^{-2j}
    let mut poch = w;
    let mut pa = inv_a2;
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    for j in 0..BERNOULLI_2K_OVER_FACT.len() {
        let term = poch * (BERNOULLI_2K_OVER_FACT[j] * pa);
        let mag = term.norm();
        if mag > last {
            err = last;
            break;
        }
        acc.add(term);
        last = mag;
        err = mag;
        if mag < 1e-18 * acc.value().norm() {
            break;
        }
        let jj = 2.0 * (j + 1) as f64;
        poch *= (w + jj - 1.0) * (w + jj);
        pa *= inv_a2;
    }
    Bounded::new(acc.value(), err + acc.rounding_bound())
}

/// a^{w−1} ζ(w, a) for any a > 0, free of overflow for large Re w.
pub(crate) fn hurwitz_scaled(w: Complex64, a: f64) -> Bounded {
    let base = em_base(w);
    if a >= base {
        return hurwitz_normalized(w, a);
    }
    let shift = (base - a).ceil() as usize;
    let mut direct = ComplexSum::new();
    for l in 0..shift {
        direct.add((-w * (l as f64 / a).ln_1p()).exp() / a);
    }
    let b = a + shift as f64;
    let tail = hurwitz_normalized(w, b).scale(((1.0 - w) * (b / a).ln()).exp());
    Bounded::new(direct.value() + tail.value, tail.err + direct.rounding_bound())
}

/// Hurwitz zeta ζ(w, a) = Σ_{l≥0} (a+l)^{-w}, continued to all w ≠ 1, for a > 0.
pub fn hurwitz_zeta(w: ComplexValue, a: f64) -> Result<Bounded> {
    if w == Complex64::new(1.0, 0.0) {
        return Err(DzetaError::Pole("hurwitz zeta at w = 1".into()));
    }
    if !(a > 0.0) {
        return Err(DzetaError::Domain(format!("hurwitz zeta needs a > 0, got {a}")));
    }
    let scale = ((1.0 - w) * a.ln()).exp();
    Ok(hurwitz_scaled(w, a).scale(scale))
}

/// Truncated Taylor series c0 + c1 ε + c2 ε² used to differentiate in w.
#[derive(Debug, Clone, Copy)]
struct Jet([Complex64; 3]);

impl Jet {
    fn constant(c: Complex64) -> Self {
        Jet([c, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)])
    }
    fn variable(c: Complex64) -> Self {
        Jet([c, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
    }
    fn mul(self, o: Jet) -> Jet {
        let a = self.0;
        let b = o.0;
        Jet([a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0]])
    }
    fn scale(self, c: Complex64) -> Jet {
        Jet([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }
    fn add(self, o: Jet) -> Jet {
        Jet([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
    fn recip(self) -> Jet {
        let r0 = self.0[0].inv();
        let r1 = -self.0[1] * r0 * r0;
        let r2 = -(self.0[2] * r0 + self.0[1] * r1) * r0;
        Jet([r0, r1, r2])
    }
    /// b^{-(w+ε)} for fixed w: b^{-w} (1, −ln b, ln²b/2).
    fn pow_neg(b: f64, w: Complex64) -> Jet {
        let l = b.ln();
        let p = (-w * l).exp();
        Jet([p, -p * l, p * (0.5 * l * l)])
    }
    fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).sum()
    }
}

/// ζ(w, a) together with its first two derivatives in w.
pub fn hurwitz_zeta_jet(w: ComplexValue, a: f64) -> Result<[Bounded; 3]> {
    if w == Complex64::new(1.0, 0.0) {
        return Err(DzetaError::Pole("hurwitz zeta at w = 1".into()));
    }
    if !(a > 0.0) {
        return Err(DzetaError::Domain(format!("hurwitz zeta needs a > 0, got {a}")));
    }
    let base = em_base(w) + 10.0;
    let shift = if a >= base { 0 } else { (base - a).ceil() as usize };
    let mut acc = [ComplexSum::new(), ComplexSum::new(), ComplexSum::new()];
    let push = |j: Jet, acc: &mut [ComplexSum; 3]| {
        for i in 0..3 {
            acc[i].add(j.0[i]);
        }
    };
    for l in 0..shift {
        push(Jet::pow_neg(a + l as f64, w), &mut acc);
    }
    let b = a + shift as f64;
    let wj = Jet::variable(w);
    let bw = Jet::pow_neg(b, w);
    // b^{1-w}/(w-1) + b^{-w}/2 + sum beta_j (w)_{2j-1} b^{-w-2j+1}
    let lead = bw.scale(Complex64::new(b, 0.0)).mul(wj.add(Jet::constant(Complex64::new(-1.0, 0.0))).recip());
    push(lead, &mut acc);
    push(bw.scale(Complex64::new(0.5, 0.0)), &mut acc);
    let mut poch = wj;
    let inv_b = 1.0 / b;
    let mut pb = bw.scale(Complex64::new(inv_b, 0.0));
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    for j in 0..BERNOULLI_2K_OVER_FACT.len() {
        let term = poch.mul(pb).scale(Complex64::new(BERNOULLI_2K_OVER_FACT[j], 0.0));
        let mag = term.norm();
        if mag > last {
            err = last;
            break;
        }
        push(term, &mut acc);
        last = mag;
        err = mag;
        if mag < 1e-18 * acc[0].value().norm() {
            break;
        }
        let jj = 2.0 * (j + 1) as f64;
        poch = poch
            .mul(wj.add(Jet::constant(Complex64::new(jj - 1.0, 0.0))))
            .mul(wj.add(Jet::constant(Complex64::new(jj, 0.0))));
        pb = pb.scale(Complex64::new(inv_b * inv_b, 0.0));
    }
    let c = [acc[0].value(), acc[1].value(), acc[2].value() * 2.0];
    let r = [acc[0].rounding_bound(), acc[1].rounding_bound(), 2.0 * acc[2].rounding_bound()];
    Ok([
        Bounded::new(c[0], err + r[0]),
        Bounded::new(c[1], 2.0 * err * b.ln() + r[1]),
        Bounded::new(c[2], 4.0 * err * b.ln().powi(2) + r[2]),
    ])
}

/// Riemann zeta on Re s > 0 by Euler–Maclaurin summation with the
/// periodic-Bernoulli correction.
pub fn riemann_zeta(s: ComplexValue, settings: &EvalSettings) -> Result<ComplexValue> {
    crate::settings::check_finite("s", s)?;
    if (s - 1.0).norm() < f64::EPSILON {
        return Err(DzetaError::Pole("riemann zeta at s = 1".into()));
    }
    if s.re <= 0.0 {
        return Err(DzetaError::Domain(format!("riemann zeta needs Re s > 0, got {s}")));
    }
    let z = hurwitz_zeta(s, 1.0)?;
    if z.err > settings.tol.max(1e-15 * z.value.norm()) {
        return Err(DzetaError::Convergence(format!(
            "riemann zeta error bound {} above tol {}",
            z.err, settings.tol
        )));
    }
    Ok(z.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
        // log Γ(10) = ln 362880
        let ten = log_gamma(c(10.0, 0.0)).unwrap();
        assert!((ten.re - 362880f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_recurrence_at_3_4i() {
        let z = c(3.0, 4.0);
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        assert!((lhs - rhs).norm() < 1e-13, "{lhs} vs {rhs}");
    }

    #[test]
    fn log_gamma_poles() {
        for k in 0..4 {
            assert!(matches!(log_gamma(c(-(k as f64), 0.0)), Err(DzetaError::Pole(_))));
        }
    }

    #[test]
    fn log_gamma_negative_argument_branch() {
        // Γ(-1/2) = -2√π, so exp(log Γ) must reproduce the sign.
        let v = log_gamma(c(-0.5, 0.0)).unwrap().exp();
        assert!((v.re + 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap().re + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(c(2.0, 0.0)).unwrap().re - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        let z = c(1.0, 1.0);
        let diff = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        assert!((diff - z.inv()).norm() < 1e-12);
        assert!(matches!(digamma(c(-2.0, 0.0)), Err(DzetaError::Pole(_))));
    }

    #[test]
    fn polygamma_at_one() {
        // ψ'(1) = ζ(2), ψ''(1) = -2ζ(3), ψ'''(1) = 6ζ(4)
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let z3 = 1.202_056_903_159_594_3;
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((polygamma(1, c(1.0, 0.0)).unwrap().re - z2).abs() < 1e-13);
        assert!((polygamma(2, c(1.0, 0.0)).unwrap().re + 2.0 * z3).abs() < 1e-12);
        assert!((polygamma(3, c(1.0, 0.0)).unwrap().re - 6.0 * z4).abs() < 1e-12);
    }

    #[test]
    fn polygamma_matches_finite_difference_of_digamma() {
        let z = c(0.3, 7.0);
        let h = 1e-4;
        let fd = (digamma(z + h).unwrap() - digamma(z - h).unwrap()) / (2.0 * h);
        assert!((fd - polygamma(1, z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn zeta_two_by_bracketing_direct_sum() {
        // sum_{n<=N} n^-2 + tail, tail in [1/(N+1), 1/N]
        let n = 1_000_000u64;
        let partial: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        let lo = partial + 1.0 / (n as f64 + 1.0);
        let hi = partial + 1.0 / n as f64;
        let z = riemann_zeta(c(2.0, 0.0), &EvalSettings::default()).unwrap();
        assert!(z.re >= lo - 1e-13 && z.re <= hi + 1e-13);
        assert!((z.re - 1.644_934_066_848_226_4).abs() < 1e-14);
    }

    #[test]
    fn zeta_three() {
        let z = riemann_zeta(c(3.0, 0.0), &EvalSettings::default()).unwrap();
        assert!((z.re - 1.202_056_903_159_594_3).abs() < 1e-14);
    }

    #[test]
    fn zeta_errors() {
        let st = EvalSettings::default();
        assert!(matches!(riemann_zeta(c(1.0, 0.0), &st), Err(DzetaError::Pole(_))));
        assert!(matches!(riemann_zeta(c(-0.5, 3.0), &st), Err(DzetaError::Domain(_))));
    }

    #[test]
    fn hurwitz_jet_matches_finite_differences() {
        let w = c(2.5, 3.0);
        let a = 7.0;
        let jet = hurwitz_zeta_jet(w, a).unwrap();
        let h = 1e-4;
        let f = |x: Complex64| hurwitz_zeta(x, a).unwrap().value;
        let d1 = (f(w + h) - f(w - h)) / (2.0 * h);
        let d2 = (f(w + h) - 2.0 * f(w) + f(w - h)) / (h * h);
        assert!((jet[0].value - f(w)).norm() < 1e-14);
        assert!((jet[1].value - d1).norm() < 1e-8);
        assert!((jet[2].value - d2).norm() < 1e-5);
    }

    #[test]
    fn euler_gamma_by_accelerated_harmonic_limit() {
        // H_N - ln N - 1/(2N) + 1/(12 N^2) - 1/(120 N^4) -> gamma, error O(N^-6)
        let n = 10_000u64;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        let g = h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4));
        assert!((g - euler_gamma()).abs() < 1e-14);
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler_gamma()).abs() < 1e-12);
    }
}
