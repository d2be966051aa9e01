//! Phase-space quantities for the Laguerre eigenstates of a particle whose
//! mass varies as m(x) = e^{-ax}.
//!
//! The auxiliary coordinate is μ(x) = (2/a) e^{-ax/2} and κ = μ² ranges over
//! (0, ∞). Eigenstates carry a principal number n and a real angular
//! parameter l; expectation values of μ, μ², π and π² depend only on (n, l).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_k_complex_order, laguerre, ln_factorial, ln_gamma, MAX_IMAG_ORDER};

/// Quantum numbers and inverse well width of one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumIndices {
    pub n: u32,
    pub l: f64,
    pub a: f64,
}

/// Rejects l ≤ -3/2 and l at the excluded points -3/2, -5/2, ...
fn check_l(l: f64) -> Result<()> {
    if !l.is_finite() || l <= -1.5 {
        return domain(format!("l must be finite and greater than -3/2, got {l}"));
    }
    Ok(())
}

impl QuantumIndices {
    pub fn new(n: u32, l: f64, a: f64) -> Result<Self> {
        check_l(l)?;
        if a == 0.0 || !a.is_finite() {
            return domain(format!("a must be finite and nonzero, got {a}"));
        }
        Ok(Self { n, l, a })
    }
}

/// μ(x) = (2/a) e^{-ax/2}.
pub fn mu(x: f64, a: f64) -> f64 {
    2.0 / a * (-0.5 * a * x).exp()
}

/// ln κ(x) with κ = μ² = (4/a²) e^{-ax}.
pub fn ln_kappa(x: f64, a: f64) -> f64 {
    4f64.ln() - 2.0 * a.abs().ln() - a * x
}

/// ln C(x, k) for a generalized binomial with positive falling factors.
fn ln_binomial(x: f64, k: u32) -> f64 {
    (0..k).map(|j| (x - j as f64).ln()).sum::<f64>() - ln_factorial(k)
}

/// ln|γ_{n,l,l1,l2}| and its sign.
fn ln_gamma_coefficient(n: u32, l: f64, l1: u32, l2: u32) -> Result<(f64, f64)> {
    if l1 > n || l2 > n {
        return domain(format!("summation indices must not exceed n = {n}, got ({l1}, {l2})"));
    }
    check_l(l)?;
    let x = n as f64 + l + 0.5;
    let ln = ln_factorial(n) - ln_gamma(x + 1.0)? - ln_factorial(l1) - ln_factorial(l2)
        + ln_binomial(x, n - l1)
        + ln_binomial(x, n - l2);
    let sign = if (l1 + l2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((ln, sign))
}

/// γ_{n,l,l1,l2} = [n!/Γ(n+l+3/2)] (-1)^{l1+l2}/(l1! l2!)
/// C(n+l+1/2, n-l1) C(n+l+1/2, n-l2).
pub fn gamma_coefficient(n: u32, l: f64, l1: u32, l2: u32) -> Result<f64> {
    let (ln, sign) = ln_gamma_coefficient(n, l, l1, l2)?;
    Ok(sign * ln.exp())
}

/// Σ_{l1,l2} γ_{n,l,l1,l2} f(l1, l2) Γ(l + l1 + l2 + shift), with each
/// γ·Γ product formed in log space. Summed in index order.
fn gamma_sum(n: u32, l: f64, shift: f64, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let mut total = 0.0;
    for l1 in 0..=n {
        for l2 in 0..=n {
            let (ln, sign) = ln_gamma_coefficient(n, l, l1, l2)?;
            let arg = l + (l1 + l2) as f64 + shift;
            if arg <= 0.0 {
                return domain(format!("gamma argument {arg} is not positive"));
            }
            let factor = f(l1 as f64, l2 as f64);
            if factor != 0.0 {
                total += sign * factor * (ln + ln_gamma(arg)?).exp();
            }
        }
    }
    if !total.is_finite() {
        return Err(Error::Overflow(format!("expectation sum overflows at n = {n}, l = {l}")));
    }
    Ok(total)
}

/// Normalized eigenfunction
/// ψ_n(x) = √(|a| n!/Γ(n+l+3/2)) κ^{l/2+3/4} e^{-κ/2} L_n^{(l+1/2)}(κ).
pub fn eigenfunction(idx: &QuantumIndices, x: f64) -> Result<f64> {
    let QuantumIndices { n, l, a } = *idx;
    let lk = ln_kappa(x, a);
    let kappa = lk.exp();
    let ln_norm = 0.5 * (a.abs().ln() + ln_factorial(n) - ln_gamma(n as f64 + l + 1.5)?);
    let envelope = (ln_norm + (0.5 * l + 0.75) * lk - 0.5 * kappa).exp();
    Ok(envelope * laguerre(n, l + 0.5, kappa))
}

/// Closed-form Wigner function at (x, p): (2/π) Σ γ κ^{l+l1+l2+3/2}
/// K_{l1-l2-2ip/a}(κ). The imaginary parts of the (l1, l2) and (l2, l1)
/// terms cancel; a residue above 1e-10 is reported as an error.
pub fn wigner(idx: &QuantumIndices, x: f64, p: f64) -> Result<f64> {
    let QuantumIndices { n, l, a } = *idx;
    let tau = 2.0 * p / a;
    if tau.abs() > MAX_IMAG_ORDER {
        return domain(format!("|2p/a| = {} exceeds the Bessel order guard {MAX_IMAG_ORDER}", tau.abs()));
    }
    let lk = ln_kappa(x, a);
    let kappa = lk.exp();
    let mut total = Complex64::new(0.0, 0.0);
    for l1 in 0..=n {
        for l2 in 0..=n {
            let (ln, sign) = ln_gamma_coefficient(n, l, l1, l2)?;
            let power = l + (l1 + l2) as f64 + 1.5;
            let k = bessel_k_complex_order(Complex64::new(l1 as f64 - l2 as f64, -tau), kappa)?;
            total += k * (sign * (ln + power * lk).exp());
        }
    }
    total *= 2.0 / PI;
    if total.im.abs() > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "Wigner function has imaginary part {:e} at x = {x}, p = {p}",
            total.im
        )));
    }
    Ok(total.re)
}

/// ⟨μ^q⟩ = Σ γ Γ(l + l1 + l2 + (q+3)/2) for q ∈ {1, 2}.
pub fn expectation_mu(q: u32, n: u32, l: f64) -> Result<f64> {
    if q != 1 && q != 2 {
        return domain(format!("q must be 1 or 2, got {q}"));
    }
    gamma_sum(n, l, (q as f64 + 3.0) / 2.0, |_, _| 1.0)
}

/// ⟨π⟩ = -i Σ γ (l1 - l2 - 1/2) Γ(l + l1 + l2 + 1). Requires l > -1.
pub fn expectation_pi(n: u32, l: f64) -> Result<Complex64> {
    if !(l > -1.0) {
        return domain(format!("<pi> requires l > -1, got {l}"));
    }
    let s = gamma_sum(n, l, 1.0, |l1, l2| l1 - l2 - 0.5)?;
    Ok(Complex64::new(0.0, -s))
}

/// ⟨π²⟩ = Σ γ (l + 1/2 - l1² - l2² + 2 l1 l2 + 2 l1) Γ(l + l1 + l2 + 1/2).
/// Requires l > -1/2.
pub fn expectation_pi2(n: u32, l: f64) -> Result<f64> {
    if !(l > -0.5) {
        return domain(format!("<pi^2> requires l > -1/2, got {l}"));
    }
    gamma_sum(n, l, 0.5, |l1, l2| l + 0.5 - l1 * l1 - l2 * l2 + 2.0 * l1 * l2 + 2.0 * l1)
}

/// Position and momentum spreads of one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uncertainty {
    pub delta_mu: f64,
    pub delta_pi: f64,
}

impl Uncertainty {
    pub fn product(&self) -> f64 {
        self.delta_mu * self.delta_pi
    }
}

/// Δμ = √(⟨μ²⟩ - ⟨μ⟩²) and Δπ = √(⟨π²⟩ - ⟨π⟩²), with ⟨π⟩² the complex
/// square of the purely imaginary ⟨π⟩.
pub fn uncertainty(n: u32, l: f64) -> Result<Uncertainty> {
    let m1 = expectation_mu(1, n, l)?;
    let m2 = expectation_mu(2, n, l)?;
    let p1 = expectation_pi(n, l)?;
    let p2 = expectation_pi2(n, l)?;
    let mu_rad = m2 - m1 * m1;
    let pi_rad = Complex64::new(p2, 0.0) - p1 * p1;
    if mu_rad < 0.0 {
        return domain(format!("negative position radicand {mu_rad:e} at n = {n}, l = {l}"));
    }
    if pi_rad.re < 0.0 {
        return domain(format!("negative momentum radicand {:e} at n = {n}, l = {l}", pi_rad.re));
    }
    Ok(Uncertainty {
        delta_mu: mu_rad.sqrt(),
        delta_pi: pi_rad.re.sqrt(),
    })
}

/// Δμ·Δπ.
pub fn uncertainty_product(n: u32, l: f64) -> Result<f64> {
    uncertainty(n, l).map(|u| u.product())
}

/// Weyl symbol of μ^q: μ(x)^q.
pub fn weyl_transform_mu(q: u32, x: f64, a: f64) -> Result<f64> {
    if a == 0.0 {
        return domain("a must be nonzero");
    }
    Ok(mu(x, a).powi(q as i32))
}

/// Weyl symbols of π and π²:
/// q = 1: (2/a) μ^{-1} p + (i/2) μ^{-1};
/// q = 2: (4/a²) μ^{-2} p² + (2i/a) μ^{-2} p.
pub fn weyl_transform_pi(q: u32, x: f64, p: f64, a: f64) -> Result<Complex64> {
    if a == 0.0 || !a.is_finite() {
        return domain("a must be finite and nonzero");
    }
    let inv = 1.0 / mu(x, a);
    match q {
        1 => Ok(Complex64::new(2.0 / a * inv * p, 0.5 * inv)),
        2 => Ok(Complex64::new(4.0 / (a * a) * inv * inv * p * p, 2.0 / a * inv * inv * p)),
        _ => domain(format!("q must be 1 or 2, got {q}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_coefficient_values() {
        assert_relative_eq!(gamma_coefficient(0, 0.0, 0, 0).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-14);
        let g = crate::specfun::gamma(3.5).unwrap();
        assert_relative_eq!(gamma_coefficient(0, 2.0, 0, 0).unwrap(), 1.0 / g, max_relative = 1e-14);
        for (l1, l2) in [(0, 2), (1, 3), (2, 3)] {
            assert_eq!(
                gamma_coefficient(3, 0.7, l1, l2).unwrap(),
                gamma_coefficient(3, 0.7, l2, l1).unwrap()
            );
        }
        assert!(gamma_coefficient(2, 0.0, 3, 0).is_err());
    }

    #[test]
    fn ground_state_expectations() {
        assert_relative_eq!(expectation_mu(2, 0, 0.0).unwrap(), 1.5, max_relative = 1e-13);
        assert_relative_eq!(expectation_mu(1, 0, 0.0).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(expectation_mu(2, 0, 5.0).unwrap(), 6.5, max_relative = 1e-13);
        let p = expectation_pi(0, 0.0).unwrap();
        assert_eq!(p.re, 0.0);
        assert_relative_eq!(p.im, 1.0 / PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(expectation_pi2(0, 7.0).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn uncertainty_at_origin() {
        let expected = (1.5 - 4.0 / PI).sqrt() * (1.0 + 1.0 / PI).sqrt();
        assert_relative_eq!(uncertainty_product(0, 0.0).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn antisymmetric_part_cancels() {
        for n in 0..=3 {
            let s = gamma_sum(n, 0.0, 1.0, |l1, l2| l1 - l2).unwrap();
            assert!(s.abs() < 1e-12, "n = {n}: {s}");
        }
    }

    #[test]
    fn weyl_symbols() {
        let w = weyl_transform_pi(1, 0.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(w.re, 1.0);
        assert_relative_eq!(w.im, 0.5);
        assert_eq!(weyl_transform_pi(2, 0.4, 0.0, 1.3).unwrap(), Complex64::new(0.0, 0.0));
        assert!(weyl_transform_pi(3, 0.0, 0.0, 1.0).is_err());
        assert_relative_eq!(weyl_transform_mu(2, 0.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn index_guards() {
        assert!(QuantumIndices::new(0, -1.5, 1.0).is_err());
        assert!(QuantumIndices::new(0, 0.0, 0.0).is_err());
        assert!(QuantumIndices::new(0, -1.2, 1.0).is_ok());
        assert!(expectation_pi(0, -1.0).is_err());
        assert!(expectation_pi2(0, -0.5).is_err());
        assert!(expectation_mu(3, 0, 0.0).is_err());
        let idx = QuantumIndices::new(0, 0.0, 0.01).unwrap();
        assert!(wigner(&idx, 0.0, 1.0).is_err());
    }

    #[test]
    fn wigner_is_even_in_momentum() {
        let idx = QuantumIndices::new(1, 1.0, 1.0).unwrap();
        let a = wigner(&idx, 0.3, 0.7).unwrap();
        let b = wigner(&idx, 0.3, -0.7).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }
}
