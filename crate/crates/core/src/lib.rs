//! Numerical evaluation of the Euler double zeta-function
//! ζ₂(s₀, s) = Σ_{m≥1} m^{-s₀} Σ_{n≥1} (m+n)^{-s}, its analytic continuation,
//! and mean-square experiments on vertical lines.

pub mod error;
pub mod settings;
pub mod special;
mod msums;
pub mod double_zeta;
pub mod continuation;
pub mod approximation;
pub mod euler_constant2;
pub mod mean_square;
pub mod quadrature;
mod sum;

pub use error::{DzetaError, Result};
pub use settings::{EvalResult, EvalSettings, Route};
pub use special::{digamma, euler_gamma, hurwitz_zeta, log_gamma, polygamma, riemann_zeta};
pub use sum::{ComplexSum, KahanSum};

/// A point σ + it of the complex plane.
pub type ComplexValue = num_complex::Complex64;
