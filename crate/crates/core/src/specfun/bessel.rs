//! Modified Bessel function of the second kind (MacDonald function) at complex order.
//!
//! K_ν(x) = ∫₀^∞ e^{-x cosh t} cosh(νt) dt for x > 0. The integrand is entire
//! and decays double-exponentially, so the trapezoidal rule on a truncated
//! half-line converges geometrically in the step size. The step is halved
//! until two successive estimates agree.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest |Im ν| accepted. Beyond this K_ν(x) is dominated by cancellation
/// (its size is of order e^{-π|Im ν|/2}).
pub const MAX_IMAG_ORDER: f64 = 80.0;

/// Integrand contributions below e^{-TAIL_LOG} of the peak are dropped.
const TAIL_LOG: f64 = 41.0;

fn log_envelope(x: f64, re_order: f64, t: f64) -> f64 {
    -x * t.cosh() + re_order * t
}

/// Upper integration limit T such that the envelope e^{-x cosh t + |Re ν| t}
/// has dropped 1e-18 below its maximum for all t > T.
fn truncation_point(x: f64, re_order: f64) -> f64 {
    let t_peak = (re_order / x).asinh();
    let peak = log_envelope(x, re_order, t_peak);
    let mut step = 0.5;
    let mut t = t_peak + step;
    while log_envelope(x, re_order, t) > peak - TAIL_LOG {
        t += step;
        step *= 1.5;
    }
    t
}

fn integrand(nu: Complex64, x: f64, t: f64) -> Complex64 {
    let base = -x * t.cosh();
    let nt = nu * t;
    ((nt + base).exp() + (-nt + base).exp()) * 0.5
}

/// K_ν(x) for complex order ν and real x > 0.
pub fn bessel_k_complex_order(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_nu(x) requires finite x > 0, got {x}")));
    }
    if !(nu.im.abs() <= MAX_IMAG_ORDER) || !nu.re.is_finite() {
        return Err(Error::Domain(format!(
            "|Im nu| must not exceed {MAX_IMAG_ORDER}, got nu = {nu}"
        )));
    }
    let re_order = nu.re.abs();
    let upper = truncation_point(x, re_order);

    let mut panels: usize = 64;
    let mut h = upper / panels as f64;
    let mut sum = integrand(nu, x, 0.0) * 0.5;
    let mut scale = (-x).exp() * 0.5;
    for k in 1..=panels {
        let t = k as f64 * h;
        sum += integrand(nu, x, t);
        scale += log_envelope(x, re_order, t).exp();
    }
    let mut estimate = sum * h;

    const MAX_PANELS: usize = 1 << 20;
    while panels < MAX_PANELS {
        h *= 0.5;
        panels *= 2;
        for k in (1..panels).step_by(2) {
            let t = k as f64 * h;
            sum += integrand(nu, x, t);
            scale += log_envelope(x, re_order, t).exp();
        }
        let refined = sum * h;
        let change = (refined - estimate).norm();
        estimate = refined;
        if change <= 1e-12 * scale * h && panels >= 128 {
            return Ok(estimate);
        }
    }
    Err(Error::NonConvergence {
        estimate: estimate.norm(),
        error: f64::NAN,
        subdivisions: panels,
    })
}
