//! Scalar special functions: complex gamma, Pochhammer symbols, terminating
//! Gauss hypergeometric series, generalized Laguerre polynomials and the
//! MacDonald function at complex order.

mod bessel;
mod gamma;
mod hypergeometric;
mod laguerre;

pub use bessel::{bessel_k_complex_order, MAX_IMAG_ORDER};
pub use gamma::{complex_gamma, factorial, gamma, ln_complex_gamma, ln_factorial, ln_gamma, pochhammer};
pub use hypergeometric::{hyp2f1_series, hyp2f1_terminating, hyp2f1_terminating_exact};
pub use laguerre::laguerre;

/// Complex double used for every floating result of this crate.
pub type ComplexValue = num_complex::Complex64;
