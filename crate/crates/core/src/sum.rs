//! Compensated (Neumaier) accumulators.
//!
//! Every long series loop in the crate accumulates through these so that
//! results do not depend on the length of the loop beyond the last ulp or so.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Complex accumulator; also tracks the sum of absolute values so callers can
/// report a rounding bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: KahanSum,
    im: KahanSum,
    mass: f64,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.mass += z.re.abs() + z.im.abs();
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    /// Sum of |re| + |im| over everything added.
    #[inline]
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Rounding bound for the accumulated value.
    #[inline]
    pub fn rounding_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.mass
    }
}

impl std::iter::FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_small_terms() {
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn complex_mass_tracks_absolute_values() {
        let acc: ComplexSum = [Complex64::new(1.0, -2.0), Complex64::new(-1.0, 2.0)]
            .into_iter()
            .collect();
        assert_eq!(acc.value(), Complex64::new(0.0, 0.0));
        assert_eq!(acc.mass(), 6.0);
    }
}
