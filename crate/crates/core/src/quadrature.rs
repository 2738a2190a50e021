//! Gauss–Legendre rules and adaptive Gauss–Kronrod (7, 15) integration of
//! complex-valued functions on finite intervals.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::sum::ComplexSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One application of the 15-point Kronrod rule on [a, b], returning the
/// Kronrod estimate and |Kronrod − Gauss|.
pub fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        k += pair * WGK[j];
        if j % 2 == 1 {
            g += pair * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub err: f64,
    pub evaluations: usize,
}

/// Adaptive bisection with the (7, 15) pair until each accepted panel's
/// error estimate is below its share of `tol`, or `max_depth` is reached.
pub fn integrate_adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Integral {
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut stack = vec![(a, b, 0u32)];
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    // Depth-first with the right half pushed first keeps the summation order
    // left to right, which makes the result reproducible.
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(f, lo, hi);
        evaluations += 15;
        let share = tol * (hi - lo).abs() / width;
        if e <= share.max(4.0 * f64::EPSILON * v.norm()) || depth >= max_depth {
            acc.add(v);
            err += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Integral { value: acc.value(), err: err + acc.rounding_bound(), evaluations }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared cached rule.
    pub fn cached(n: usize) -> std::sync::Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, std::sync::Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("quadrature cache poisoned");
        guard.entry(n).or_insert_with(|| std::sync::Arc::new(GaussLegendre::new(n))).clone()
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = ComplexSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(c + h * x) * *w);
        }
        acc.value() * h
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(k: i32) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(x.powi(k), 0.0)
    }

    fn exact_mono(k: i32, a: f64, b: f64) -> f64 {
        (b.powi(k + 1) - a.powi(k + 1)) / (k + 1) as f64
    }

    #[test]
    fn kronrod_exact_to_degree_22_gauss_to_13() {
        for k in 0..=22 {
            let (v, e) = gk15(&mono(k), -0.3, 1.1);
            let ex = exact_mono(k, -0.3, 1.1);
            assert!((v.re - ex).abs() < 1e-14 * ex.abs().max(1.0), "degree {k}");
            if k <= 13 {
                assert!(e < 1e-14, "gauss degree {k}: {e}");
            }
        }
        let (_, e) = gk15(&mono(14), -1.0, 1.0);
        assert!(e > 1e-6);
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in [1, 2, 5, 10, 33, 64] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
            for k in 0..(2 * n as i32) {
                let v = rule.integrate(&mono(k), 0.0, 2.0).re;
                let ex = exact_mono(k, 0.0, 2.0);
                assert!((v - ex).abs() < 1e-12 * ex.max(1.0), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn adaptive_oscillatory() {
        let f = |t: f64| Complex64::new(0.0, 40.0 * t).exp();
        let r = integrate_adaptive(&f, 0.0, 3.0, 1e-12, 30);
        let ex = (Complex64::new(0.0, 120.0).exp() - 1.0) / Complex64::new(0.0, 40.0);
        assert!((r.value - ex).norm() < 1e-11);
        assert!(r.err < 1e-10);
    }

    #[test]
    fn adaptive_endpoint_singularity() {
        let f = |t: f64| Complex64::new(t.sqrt(), 0.0);
        let r = integrate_adaptive(&f, 0.0, 1.0, 1e-10, 50);
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-10);
    }
}
