//! The double Euler constant γ₂(s₀), the constant term of ζ₂(s₀, s) at its
//! pole s = 1, computed three independent ways.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuation::{m_length, neville_at_zero, zeta2_eval};
use crate::double_zeta::{zeta2_direct, ArgumentPair};
use crate::error::{DzetaError, Result};
use crate::msums::{log_weight_tail, pair_tail};
use crate::settings::{check_finite, EvalSettings};
use crate::special::{hurwitz_zeta, riemann_zeta, BERNOULLI_2K, EULER_GAMMA};
use crate::sum::{ComplexSum, KahanSum};
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma2Result {
    pub via_limit: ComplexValue,
    pub via_pole: ComplexValue,
    pub via_closed: ComplexValue,
    /// Largest pairwise distance between the three values.
    pub spread: f64,
}

fn require_half_plane(s0: Complex64) -> Result<()> {
    check_finite("s0", s0)?;
    if s0.re <= 1.0 {
        return Err(DzetaError::Domain(format!("γ₂ is defined for Re s0 > 1, got {s0}")));
    }
    Ok(())
}

/// Σ_m m^{-s₀} {Σ_{n≤N} (m+n)^{-1} − log(m+N)} for one N, all m included.
pub fn gamma2_partial(s0: ComplexValue, n: usize, settings: &EvalSettings) -> Result<ComplexValue> {
    require_half_plane(s0)?;
    let nf = n as f64;
    let m_max = m_length(settings, nf, s0, Complex64::new(1.0, 0.0));
    let top = m_max + n;
    let mut harmonic = Vec::with_capacity(top + 1);
    harmonic.push(0.0);
    let mut h = KahanSum::new();
    for j in 1..=top {
        h.add(1.0 / j as f64);
        harmonic.push(h.value());
    }
    let mut acc = ComplexSum::new();
    for m in 1..=m_max {
        let inner = harmonic[m + n] - harmonic[m] - ((m + n) as f64).ln();
        acc.add((-s0 * (m as f64).ln()).exp() * inner);
    }
    // For m > M expand H_j − log j = γ + 1/(2j) − Σ B_{2i}/(2i) j^{-2i} at
    // j = m + N and j = m; the γ terms cancel.
    let a = m_max as f64 + 1.0;
    let mut tail = ComplexSum::new();
    tail.add(0.5 * pair_tail(s0, Complex64::new(1.0, 0.0), nf, m_max)?.value);
    tail.add(-log_weight_tail(s0, m_max)?.value);
    tail.add(-0.5 * hurwitz_zeta(s0 + 1.0, a)?.value);
    for (i, b) in BERNOULLI_2K.iter().take(4).enumerate() {
        let k = 2 * (i + 1);
        let coef = b / k as f64;
        tail.add(-coef * pair_tail(s0, Complex64::new(k as f64, 0.0), nf, m_max)?.value);
        tail.add(coef * hurwitz_zeta(s0 + k as f64, a)?.value);
    }
    Ok(acc.value() + tail.value())
}

/// Basis of the large-N expansion of gamma2_partial: N^{-k} for integers
/// k ≥ 1 merged with N^{-(s₀+j)}; coinciding exponents carry a log N.
fn expansion_basis(s0: Complex64, count: usize) -> Vec<(Complex64, bool)> {
    let mut out: Vec<(Complex64, bool)> = Vec::new();
    let mut k = 1.0;
    let mut j = 0.0;
    while out.len() < count {
        let a = Complex64::new(k, 0.0);
        let b = s0 + j;
        if (a - b).norm() < 1e-9 {
            out.push((a, false));
            out.push((a, true));
            k += 1.0;
            j += 1.0;
        } else if a.re <= b.re {
            out.push((a, false));
            k += 1.0;
        } else {
            out.push((b, false));
            j += 1.0;
        }
    }
    out.truncate(count);
    out
}

fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Constant term of a fit of values at N_i to 1 plus the expansion basis.
fn extrapolate(s0: Complex64, ns: &[f64], vals: &[Complex64]) -> Option<Complex64> {
    let basis = expansion_basis(s0, ns.len() - 1);
    let n_ref = ns[0];
    let rows: Vec<Vec<Complex64>> = ns
        .iter()
        .map(|&n| {
            let u = n / n_ref;
            let mut row = vec![Complex64::new(1.0, 0.0)];
            for &(e, with_log) in &basis {
                let v = (-e * u.ln()).exp();
                row.push(if with_log { v * u.ln() } else { v });
            }
            row
        })
        .collect();
    solve_complex(rows, vals.to_vec()).map(|x| x[0])
}

/// γ₂(s₀) as the N → ∞ limit of gamma2_partial, accelerated over
/// N_max, N_max/2, … with the known shape of the expansion.
pub fn gamma2_limit(s0: ComplexValue, n_max: usize, settings: &EvalSettings) -> Result<ComplexValue> {
    settings.validate()?;
    require_half_plane(s0)?;
    if n_max < 1000 {
        return Err(DzetaError::Domain(format!("N_max must be at least 1000, got {n_max}")));
    }
    let ns: Vec<f64> = (0..6).map(|i| (n_max as f64 / 2f64.powi(i)).round()).collect();
    let mut vals = Vec::with_capacity(ns.len());
    for &n in &ns {
        vals.push(gamma2_partial(s0, n as usize, settings)?);
    }
    let full = extrapolate(s0, &ns, &vals)
        .ok_or_else(|| DzetaError::Convergence("singular extrapolation system".into()))?;
    let reduced = extrapolate(s0, &ns[..5], &vals[..5])
        .ok_or_else(|| DzetaError::Convergence("singular extrapolation system".into()))?;
    let residual = (full - reduced).norm();
    if residual > settings.tol.max(1e-12) * full.norm().max(1.0) {
        return Err(DzetaError::Convergence(format!(
            "limit acceleration residual {residual:e} above tol {:e}",
            settings.tol
        )));
    }
    Ok(full)
}

/// Extrapolation of ζ₂(s₀, 1+δ) − ζ(s₀)/δ to δ = 0 over the given steps.
pub fn gamma2_pole_from(s0: ComplexValue, deltas: &[f64], settings: &EvalSettings) -> Result<ComplexValue> {
    settings.validate()?;
    require_half_plane(s0)?;
    if deltas.len() < 3 || deltas.iter().any(|&d| d <= settings.singular_radius) {
        return Err(DzetaError::Domain("need at least three steps outside the singular radius".into()));
    }
    let z = riemann_zeta(s0, settings)?;
    let mut vals = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let v = zeta2_eval(&ArgumentPair::new(s0, Complex64::new(1.0 + d, 0.0)), settings)?.value;
        vals.push(v - z / d);
    }
    Ok(neville_at_zero(deltas, &vals))
}

/// γ₂(s₀) as lim_{s→1} {ζ₂(s₀, s) − ζ(s₀)/(s−1)}.
pub fn gamma2_pole(s0: ComplexValue, settings: &EvalSettings) -> Result<ComplexValue> {
    let deltas: Vec<f64> = (0..5).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect();
    let full = gamma2_pole_from(s0, &deltas, settings)?;
    let fewer = gamma2_pole_from(s0, &deltas[..4], settings)?;
    if (full - fewer).norm() > 1e-6 {
        return Err(DzetaError::Convergence(format!("pole extrapolation unstable: {full} vs {fewer}")));
    }
    Ok(full)
}

/// γ₂(s₀) = ζ(s₀)γ − ζ₂(1, s₀) − ζ(s₀+1).
pub fn gamma2_closed(s0: ComplexValue, settings: &EvalSettings) -> Result<ComplexValue> {
    settings.validate()?;
    require_half_plane(s0)?;
    let z = riemann_zeta(s0, settings)?;
    let z2 = zeta2_direct(&ArgumentPair::new(Complex64::new(1.0, 0.0), s0), settings)?.value;
    Ok(z * EULER_GAMMA - z2 - riemann_zeta(s0 + 1.0, settings)?)
}

/// All three routes and their spread.
pub fn gamma2_all(s0: ComplexValue, n_max: usize, settings: &EvalSettings) -> Result<Gamma2Result> {
    let via_limit = gamma2_limit(s0, n_max, settings)?;
    let via_pole = gamma2_pole(s0, settings)?;
    let via_closed = gamma2_closed(s0, settings)?;
    let spread = (via_limit - via_pole)
        .norm()
        .max((via_limit - via_closed).norm())
        .max((via_pole - via_closed).norm());
    Ok(Gamma2Result { via_limit, via_pole, via_closed, spread })
}
