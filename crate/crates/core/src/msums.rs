//! Infinite m-sums of the shape Σ_{m>M} m^{-s₀} f(m + x) in closed form.
//!
//! With j = m + x the weight m^{-s₀} = j^{-s₀}(1 − x/j)^{-s₀} expands in a
//! binomial series whose ratio is x/(M+x+1), so every tail becomes a rapidly
//! convergent combination of Hurwitz zeta values at M + x + 1.  The Hurwitz
//! values are analytically continued, which makes the tails meaningful
//! exactly where the full identity is.

use num_complex::Complex64;

use crate::error::{DzetaError, Result};
use crate::special::{expm1_over, hurwitz_scaled, hurwitz_zeta_jet, Bounded, BERNOULLI_2K_OVER_FACT};
use crate::sum::ComplexSum;

const SERIES_EPS: f64 = 1e-17;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Σ_{m>M} m^{-s₀} (m + x)^{-v}, continued in v.
pub(crate) fn pair_tail(s0: Complex64, v: Complex64, x: f64, m_cut: usize) -> Result<Bounded> {
    let a = m_cut as f64 + x + 1.0;
    let r = x / a;
    let w0 = s0 + v;
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut coef = one();
    for k in 0..400 {
        let w = w0 + k as f64;
        if w == one() {
            return Err(DzetaError::Singular(format!("tail exponent hits the pole at s0+v = {}", 1 - k as i64)));
        }
        let h = hurwitz_scaled(w, a);
        acc.add(coef * h.value);
        err += coef.norm() * h.err;
        if r == 0.0 {
            break;
        }
        coef *= (s0 + k as f64) * (r / (k + 1) as f64);
        let next = coef.norm() * (h.value.norm() + 1.0 / a);
        if next == 0.0 {
            break;
        }
        if next < SERIES_EPS * acc.mass() {
            err += 2.0 * next;
            break;
        }
    }
    let pref = ((1.0 - w0) * a.ln()).exp();
    Ok(Bounded::new(acc.value(), err + acc.rounding_bound()).scale(pref))
}

/// Σ_{m>M} m^{-s₀} ζ(s, m + x + 1), built from the asymptotic expansion of
/// ζ(s, a) at a = m + x.
pub(crate) fn shifted_zeta_tail(s0: Complex64, s: Complex64, x: f64, m_cut: usize) -> Result<Bounded> {
    if s == one() {
        return Err(DzetaError::Pole("shifted zeta tail at s = 1".into()));
    }
    let mut total = pair_tail(s0, s - 1.0, x, m_cut)?.scale((s - 1.0).inv());
    total = total - pair_tail(s0, s, x, m_cut)?.scale(Complex64::new(0.5, 0.0));
    total = total + bernoulli_pair_series(s0, s, s, x, m_cut)?;
    Ok(total)
}

/// Σ_j β_j (e)_{2j−1} Σ_{m>M} m^{-s₀}(m+x)^{-(v+2j−1)} for j ≥ 1.
fn bernoulli_pair_series(s0: Complex64, e: Complex64, v: Complex64, x: f64, m_cut: usize) -> Result<Bounded> {
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut poch = e;
    let mut last = f64::INFINITY;
    for (j, beta) in BERNOULLI_2K_OVER_FACT.iter().enumerate() {
        let p = pair_tail(s0, v + (2 * j + 1) as f64, x, m_cut)?;
        let term = p.scale(poch * *beta);
        let mag = term.value.norm();
        if mag > last {
            err += last;
            break;
        }
        acc.add(term.value);
        err += term.err;
        last = mag;
        if mag <= SERIES_EPS * acc.mass() {
            err += mag;
            break;
        }
        let jj = 2.0 * (j + 1) as f64;
        poch *= (e + jj - 1.0) * (e + jj);
    }
    Ok(Bounded::new(acc.value(), err + acc.rounding_bound()))
}

/// ∫_A^∞ (y − [y] − ½) y^{-e} dy for integer A, by the periodic-Bernoulli
/// expansion.
pub(crate) fn sawtooth_tail(e: Complex64, a: f64) -> Bounded {
    let ln_a = a.ln();
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut poch = one();
    let mut last = f64::INFINITY;
    for (k, beta) in BERNOULLI_2K_OVER_FACT.iter().enumerate() {
        let pw = (-(e + (2 * k) as f64) * ln_a).exp();
        let term = -poch * pw * *beta;
        let mag = term.norm();
        if mag > last {
            err = last;
            break;
        }
        acc.add(term);
        last = mag;
        err = mag;
        if mag <= SERIES_EPS * acc.mass() {
            break;
        }
        let kk = 2.0 * k as f64;
        poch *= (e + kk) * (e + kk + 1.0);
    }
    Bounded::new(acc.value(), err + acc.rounding_bound())
}

/// Σ_{m>M} m^{-s₀} ∫_{m+N}^∞ (y − [y] − ½) y^{-e} dy for integer N.
pub(crate) fn sawtooth_pair_tail(s0: Complex64, e: Complex64, n: f64, m_cut: usize) -> Result<Bounded> {
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut poch = one();
    let mut last = f64::INFINITY;
    for (k, beta) in BERNOULLI_2K_OVER_FACT.iter().enumerate() {
        let p = pair_tail(s0, e + (2 * k) as f64, n, m_cut)?;
        let term = p.scale(-poch * *beta);
        let mag = term.value.norm();
        if mag > last {
            err += last;
            break;
        }
        acc.add(term.value);
        err += term.err;
        last = mag;
        if mag <= SERIES_EPS * acc.mass() {
            err += mag;
            break;
        }
        let kk = 2.0 * k as f64;
        poch *= (e + kk) * (e + kk + 1.0);
    }
    Ok(Bounded::new(acc.value(), err + acc.rounding_bound()))
}

/// ∫_l^{l+1} (y − l − ½) y^{-e} dy for integer l ≥ 1.
pub(crate) fn sawtooth_piece(l: f64, e: Complex64) -> Complex64 {
    if l >= 0.25 * e.norm() + 1.0 {
        let c = l + 0.5;
        let inv = 1.0 / c;
        let mut acc = ComplexSum::new();
        // -(e)_j / j! for odd j, starting at j = 1
        let mut coef = -e;
        let mut pw = inv;
        let mut j = 1u32;
        loop {
            let term = coef * (pw / ((j + 2) as f64 * 2f64.powi(j as i32 + 1)));
            acc.add(term);
            if term.norm() <= SERIES_EPS * acc.mass() || j > 400 {
                break;
            }
            let jf = j as f64;
            coef *= (e + jf) * (e + jf + 1.0) / ((jf + 1.0) * (jf + 2.0));
            pw *= inv * inv;
            j += 2;
        }
        return acc.value() * (-e * c.ln()).exp();
    }
    let u = (1.0 / l).ln_1p();
    let ln_l = l.ln();
    let i1 = ((2.0 - e) * ln_l).exp() * u * expm1_over((2.0 - e) * u);
    let i0 = ((1.0 - e) * ln_l).exp() * u * expm1_over((1.0 - e) * u);
    i1 - (l + 0.5) * i0
}

/// ∫_a^b (y − f − ½) y^{-e} dy with f = [a] and a ≤ b ≤ f + 1.
pub(crate) fn sawtooth_partial(a: f64, b: f64, e: Complex64) -> Complex64 {
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    let f = a.floor();
    let u = (b / a).ln();
    let ln_a = a.ln();
    let i1 = ((2.0 - e) * ln_a).exp() * u * expm1_over((2.0 - e) * u);
    let i0 = ((1.0 - e) * ln_a).exp() * u * expm1_over((1.0 - e) * u);
    i1 - (f + 0.5) * i0
}

/// Σ_{m>M} m^{-s₀} log m, from the w-derivative of ζ(w, M+1).
pub(crate) fn log_weight_tail(s0: Complex64, m_cut: usize) -> Result<Bounded> {
    let jet = hurwitz_zeta_jet(s0, m_cut as f64 + 1.0)?;
    Ok(Bounded::new(-jet[1].value, jet[1].err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn brute_pair(s0: Complex64, v: Complex64, x: f64, m_cut: usize, upto: usize) -> Complex64 {
        let mut acc = ComplexSum::new();
        for m in (m_cut + 1..=upto).rev() {
            let mf = m as f64;
            acc.add((-s0 * mf.ln() - v * (mf + x).ln()).exp());
        }
        acc.value()
    }

    #[test]
    fn pair_tail_matches_brute_force_in_convergent_case() {
        let s0 = c(2.0, 0.5);
        let v = c(1.5, -3.0);
        let exact = brute_pair(s0, v, 7.0, 20, 2_000_000);
        // remainder of the brute sum is below 2e6^{-2.5}/2.5
        let t = pair_tail(s0, v, 7.0, 20).unwrap();
        assert!((t.value - exact).norm() < 1e-13, "{} vs {}", t.value, exact);
    }

    #[test]
    fn pair_tail_without_shift_is_hurwitz() {
        let s0 = c(1.3, 2.0);
        let v = c(1.1, 0.0);
        let t = pair_tail(s0, v, 0.0, 10).unwrap();
        let h = crate::special::hurwitz_zeta(s0 + v, 11.0).unwrap();
        assert!((t.value - h.value).norm() < 1e-15);
    }

    #[test]
    fn shifted_tail_matches_brute_force() {
        // Σ_{m>M} m^{-s0} ζ(s, m+x+1) with each ζ from the Hurwitz evaluator
        let s0 = c(3.5, 1.0);
        let s = c(1.5, 4.0);
        let m_cut = 40;
        let x = 5.0;
        let mut acc = ComplexSum::new();
        for m in (m_cut + 1..=200_000).rev() {
            let mf = m as f64;
            let z = crate::special::hurwitz_zeta(s, mf + x + 1.0).unwrap().value;
            acc.add((-s0 * mf.ln()).exp() * z);
        }
        let t = shifted_zeta_tail(s0, s, x, m_cut).unwrap();
        // truncation of the brute sum is O(2e5^{-4})
        assert!((t.value - acc.value()).norm() < 1e-13, "{} vs {}", t.value, acc.value());
        assert!(t.err < 1e-14);
    }

    #[test]
    fn sawtooth_piece_matches_gauss_legendre() {
        let rule = crate::quadrature::GaussLegendre::new(40);
        for e in [c(2.3, 1.5), c(0.6, -12.0), c(1.0, 0.0)] {
            for l in [1.0, 3.0, 12.0, 20.0, 40.0, 300.0] {
                let f = |y: f64| (y - l - 0.5) * (-e * y.ln()).exp();
                let q = rule.integrate(&f, l, l + 1.0);
                let p = sawtooth_piece(l, e);
                let scale = (-e.re * l.ln()).exp();
                assert!((p - q).norm() < 1e-14 * scale, "e={e} l={l}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn sawtooth_tail_matches_piece_sum() {
        let e = c(3.0, 2.0);
        let mut acc = ComplexSum::new();
        let a = 5.0;
        let far = 5000.0;
        let mut l = far - 1.0;
        while l >= a {
            acc.add(sawtooth_piece(l, e));
            l -= 1.0;
        }
        let direct = acc.value() + sawtooth_tail(e, far).value;
        let tail = sawtooth_tail(e, 30.0);
        let mut acc2 = ComplexSum::new();
        for k in 5..30 {
            acc2.add(sawtooth_piece(k as f64, e));
        }
        assert!((acc2.value() + tail.value - direct).norm() < 1e-14);
    }

    #[test]
    fn log_weight_tail_matches_brute_force() {
        let s0 = c(3.0, 0.0);
        let mut acc = ComplexSum::new();
        for m in (11..=1_000_000u64).rev() {
            let mf = m as f64;
            acc.add(c(mf.ln() * mf.powi(-3), 0.0));
        }
        let t = log_weight_tail(s0, 10).unwrap();
        assert!((t.value - acc.value()).norm() < 1e-11);
    }
}
