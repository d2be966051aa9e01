//! Closed-form Fourier transform
//!
//! ```text
//! F_m(α, β; λ) = ∫ e^{-iλs} s^m Γ(α - is) Γ(β + is) ds
//! ```
//!
//! as a finite sum over the partitions of m, together with the boundary
//! cases α = 0 and α = β = 0 reached by limits.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::partitions::{parts_weights, MAX_PARTITION_SIZE};
use crate::specfun::{gamma, hyp2f1_series, hyp2f1_terminating_exact};

/// Largest α + β whose gamma function is representable.
const MAX_GAMMA_ARG: f64 = 171.6;

/// Parameters (α, β, m, λ) of one transform evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    pub alpha: f64,
    pub beta: f64,
    pub m: u32,
    pub lambda: f64,
}

impl TransformParams {
    /// Validated constructor: α, β > 0, m within the partition guard,
    /// λ finite.
    pub fn new(alpha: f64, beta: f64, m: u32, lambda: f64) -> Result<Self> {
        let p = Self { alpha, beta, m, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return domain(format!("alpha must be positive and finite, got {}", self.alpha));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return domain(format!("beta must be positive and finite, got {}", self.beta));
        }
        if self.m > MAX_PARTITION_SIZE {
            return Err(Error::Resource(format!(
                "m = {} exceeds the partition guard {MAX_PARTITION_SIZE}",
                self.m
            )));
        }
        if !self.lambda.is_finite() {
            return domain(format!("lambda must be finite, got {}", self.lambda));
        }
        Ok(())
    }
}

/// ln(1 + e^x) without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Λ/(1+Λ) with Λ = e^λ.
fn logistic(lambda: f64) -> f64 {
    1.0 / (1.0 + (-lambda).exp())
}

/// Multiplies the real number r by (-i)^m.
pub(crate) fn times_minus_i_pow(m: u32, r: f64) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(r, 0.0),
        1 => Complex64::new(0.0, -r),
        2 => Complex64::new(-r, 0.0),
        _ => Complex64::new(0.0, r),
    }
}

/// Exact binary value of a finite float.
fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

fn rising(a: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, k| acc * (a + BigRational::from_integer(k.into())))
}

/// m! Σ_M (-1)^M W_M c_M g_M where W_M is the Faà di Bruno weight total for
/// M parts. The sum is formed exactly from the binary inputs and rounded
/// once, so alternating cancellation costs no accuracy.
fn partition_sum(
    m: u32,
    coef: impl Fn(u32) -> BigRational,
    g: impl Fn(u32) -> Result<BigRational>,
) -> Result<f64> {
    let weights = parts_weights(m)?;
    let mf = BigRational::from_integer((1..=m).fold(BigInt::one(), |acc, k| acc * k));
    let mut sum = BigRational::zero();
    for (big_m, w) in weights.iter_exact() {
        let term = coef(big_m) * g(big_m)? * w;
        if big_m % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let v = (mf * sum).to_f64().unwrap_or(f64::NAN);
    if !v.is_finite() {
        return Err(Error::Overflow(format!("partition sum for m = {m} is not representable")));
    }
    Ok(v)
}

/// m! Σ (-1)^M (β)_M W_M g_M.
fn pochhammer_sum(m: u32, beta: f64, g: impl Fn(u32, &BigRational) -> Result<BigRational>) -> Result<f64> {
    let b = exact(beta);
    partition_sum(m, |k| rising(&b, k), |k| g(k, &b))
}

/// m! Σ (-1)^M (β)_M W_M ₂F₁(-M, α+β; β; z).
fn closed_sum(m: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let (a, zq) = (exact(alpha), exact(z));
    pochhammer_sum(m, beta, |k, b| hyp2f1_terminating_exact(k, &(&a + b), b, &zq))
}

fn check_gamma_arg(x: f64) -> Result<()> {
    if x > MAX_GAMMA_ARG {
        return Err(Error::Overflow(format!("gamma({x}) exceeds the f64 range")));
    }
    Ok(())
}

fn finite(v: Complex64, what: &str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what} is not representable")))
    }
}

/// Closed-form transform for α, β > 0 and any real λ.
pub fn eval_transform(p: &TransformParams) -> Result<Complex64> {
    p.validate()?;
    let TransformParams { alpha, beta, m, lambda } = *p;
    check_gamma_arg(alpha + beta)?;
    let z = logistic(lambda);
    // Λ^β/(1+Λ)^{α+β} = z^β (1-z)^α
    let ln_h = -beta * softplus(-lambda) - alpha * softplus(lambda);
    let sum = closed_sum(m, alpha, beta, z)?;
    let r = 2.0 * PI * gamma(alpha + beta)? * ln_h.exp() * sum;
    finite(times_minus_i_pow(m, r), "transform")
}

/// The same transform through the untransformed series
/// ₂F₁(β+M, α+β; β; -Λ), valid only for λ < 0.
pub fn eval_transform_negative_lambda(p: &TransformParams) -> Result<Complex64> {
    p.validate()?;
    let TransformParams { alpha, beta, m, lambda } = *p;
    if lambda >= 0.0 {
        return domain(format!("series form needs lambda < 0, got {lambda}"));
    }
    check_gamma_arg(alpha + beta)?;
    let big_lambda = lambda.exp();
    let sum = pochhammer_sum(m, beta, |k, _| {
        Ok(exact(hyp2f1_series(beta + k as f64, alpha + beta, beta, -big_lambda)?))
    })?;
    let r = 2.0 * PI * gamma(alpha + beta)? * (beta * lambda).exp() * sum;
    finite(times_minus_i_pow(m, r), "transform")
}

/// ln cosh x for any real x.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Transform with α = β, written through the duplication formula with the
/// factor (2/(1+cosh λ))^β.
pub fn eval_equal_params(beta: f64, m: u32, lambda: f64) -> Result<Complex64> {
    TransformParams::new(beta, beta, m, lambda)?;
    check_gamma_arg(beta + 0.5)?;
    let z = logistic(lambda);
    // 2/(1+cosh λ) = 1/cosh²(λ/2)
    let ln_pref = -2.0 * beta * ln_cosh(0.5 * lambda);
    let sum = closed_sum(m, beta, beta, z)?;
    let r = PI.sqrt() * ln_pref.exp() * gamma(beta + 0.5)? * gamma(beta)? * sum;
    finite(times_minus_i_pow(m, r), "transform")
}

/// Limit α → 0⁺ of the transform at fixed β > 0.
///
/// m = λ = 0 gives π 2^{1-β} Γ(β), m = 0 gives 2π (Λ/(1+Λ))^β Γ(β) and
/// λ = 0 gives π (-i)^m m! 2^{1-β} Σ (-1/2)^M Γ(β+M) W_M. The remaining
/// case uses 2π (-i)^m m! (Λ/(1+Λ))^β Σ (-1)^M Γ(β+M) W_M (1+Λ)^{-M}.
pub fn eval_alpha_zero(beta: f64, m: u32, lambda: f64) -> Result<Complex64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("beta must be positive and finite, got {beta}"));
    }
    if !lambda.is_finite() {
        return domain(format!("lambda must be finite, got {lambda}"));
    }
    check_gamma_arg(beta)?;
    let g_beta = gamma(beta)?;
    let value = match (m, lambda == 0.0) {
        (0, true) => Complex64::new(PI * (1.0 - beta).exp2() * g_beta, 0.0),
        (0, false) => {
            let zb = (-beta * softplus(-lambda)).exp();
            Complex64::new(2.0 * PI * zb * g_beta, 0.0)
        }
        (_, true) => {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let sum = pochhammer_sum(m, beta, |k, _| Ok(num_traits::pow(half.clone(), k as usize)))?;
            times_minus_i_pow(m, PI * (1.0 - beta).exp2() * g_beta * sum)
        }
        (_, false) => {
            let one_minus_z = logistic(-lambda);
            let zb = (-beta * softplus(-lambda)).exp();
            let w = exact(one_minus_z);
            let sum = pochhammer_sum(m, beta, |k, _| Ok(num_traits::pow(w.clone(), k as usize)))?;
            times_minus_i_pow(m, 2.0 * PI * zb * g_beta * sum)
        }
    };
    finite(value, "transform")
}

/// Limit α → 0⁺ followed by β → 0⁺:
/// 2π (-i)^m m! Σ (-1)^M Γ(M) W_M (1+e^λ)^{-M}. Diverges for m = 0.
pub fn eval_zero_zero(m: u32, lambda: f64) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Divergent(
            "the alpha = beta = 0 limit does not exist for m = 0".into(),
        ));
    }
    if !lambda.is_finite() {
        return domain(format!("lambda must be finite, got {lambda}"));
    }
    let w = exact(logistic(-lambda));
    // Γ(M) = (M-1)! for M >= 1
    let sum = partition_sum(
        m,
        |k| BigRational::from_integer((1..k).fold(BigInt::one(), |acc, j| acc * j)),
        |k| Ok(num_traits::pow(w.clone(), k as usize)),
    )?;
    finite(times_minus_i_pow(m, 2.0 * PI * sum), "transform")
}

/// m-th derivative in λ of e^{λβ}/(1+e^λ)^{α+β}, from the partition sum.
pub fn derivative_kernel(alpha: f64, beta: f64, m: u32, lambda: f64) -> Result<f64> {
    TransformParams::new(alpha, beta, m, lambda)?;
    let z = logistic(lambda);
    let ln_h = -beta * softplus(-lambda) - alpha * softplus(lambda);
    let sum = closed_sum(m, alpha, beta, z)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let v = sign * ln_h.exp() * sum;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("derivative kernel is not representable".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn f(alpha: f64, beta: f64, m: u32, lambda: f64) -> Complex64 {
        eval_transform(&TransformParams::new(alpha, beta, m, lambda).unwrap()).unwrap()
    }

    #[test]
    fn anchor_values() {
        assert_relative_eq!(f(1.0, 1.0, 0, 0.0).re, PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(f(0.5, 0.5, 4, 0.0).re, 5.0 * PI / 16.0, max_relative = 1e-14);
        assert_relative_eq!(f(1.0, 2.0, 0, 0.0).re, PI / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn phase_follows_m() {
        let v = f(0.7, 1.3, 1, 0.4);
        assert_eq!(v.re, 0.0);
        let v = f(0.7, 1.3, 2, 0.4);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(TransformParams::new(0.0, 1.0, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(TransformParams::new(1.0, -1.0, 0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(TransformParams::new(1.0, 1.0, 65, 0.0), Err(Error::Resource(_))));
        assert!(matches!(TransformParams::new(1.0, 1.0, 0, f64::NAN), Err(Error::Domain(_))));
        let p = TransformParams::new(100.0, 100.0, 0, 0.0).unwrap();
        assert!(matches!(eval_transform(&p), Err(Error::Overflow(_))));
    }

    #[test]
    fn extreme_lambda_stays_finite() {
        for lambda in [-800.0, 800.0] {
            let v = f(1.0, 1.0, 3, lambda);
            assert!(v.norm().is_finite());
            assert!(v.norm() < 1e-300);
        }
    }

    #[test]
    fn equal_params_closed_forms() {
        for beta in [0.5, 1.0, 2.0] {
            let v = eval_equal_params(beta, 0, 0.0).unwrap();
            let expected = PI * (1.0 - 2.0 * beta).exp2() * gamma(2.0 * beta).unwrap();
            assert_relative_eq!(v.re, expected, max_relative = 1e-13);
        }
        let v = eval_equal_params(1.0, 0, 1.3).unwrap();
        assert_relative_eq!(v.re, PI / (1.0 + 1.3f64.cosh()), max_relative = 1e-13);
        assert_relative_eq!(eval_equal_params(0.5, 2, 0.0).unwrap().re, PI / 4.0, max_relative = 1e-13);
    }

    #[test]
    fn alpha_zero_cases() {
        assert_relative_eq!(eval_alpha_zero(1.0, 0, 0.0).unwrap().re, PI, max_relative = 1e-14);
        let (beta, lambda): (f64, f64) = (1.7, -0.8);
        let z = 1.0 / (1.0 + (-lambda).exp());
        let expected = 2.0 * PI * z.powf(beta) * gamma(beta).unwrap();
        assert_relative_eq!(eval_alpha_zero(beta, 0, lambda).unwrap().re, expected, max_relative = 1e-13);
        // λ = 0 branch agrees with the general branch as λ → 0
        let a = eval_alpha_zero(2.0, 3, 0.0).unwrap();
        let b = eval_alpha_zero(2.0, 3, 1e-9).unwrap();
        assert_relative_eq!(a.im, b.im, max_relative = 1e-7);
    }

    #[test]
    fn zero_zero_values() {
        assert_relative_eq!(eval_zero_zero(2, 0.0).unwrap().re, PI / 2.0, max_relative = 1e-14);
        let v = eval_zero_zero(1, 0.0).unwrap();
        assert_eq!(v.re, 0.0);
        assert_relative_eq!(v.im, PI, max_relative = 1e-14);
        assert!(matches!(eval_zero_zero(0, 0.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn derivative_kernel_values() {
        let h = |l: f64| (0.5 * l).exp() / (1.0 + l.exp());
        assert_relative_eq!(derivative_kernel(0.5, 0.5, 0, 0.3).unwrap(), h(0.3), max_relative = 1e-14);
        let step = 1e-5;
        let fd = (h(step) - h(-step)) / (2.0 * step);
        assert!((derivative_kernel(0.5, 0.5, 1, 0.0).unwrap() - fd).abs() < 1e-8);
        assert_relative_eq!(derivative_kernel(0.5, 0.5, 2, 0.0).unwrap(), -0.125, max_relative = 1e-13);
    }

    #[test]
    fn odd_moments_cancel_exactly() {
        for beta in [0.3, 1.0, 2.5, 7.25] {
            for m in [1, 3, 5, 9, 21] {
                assert_eq!(f(beta, beta, m, 0.0), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn high_order_derivative_matches_series() {
        // e^{λ/2}/(1+e^λ) = 1/(2 cosh(λ/2)) has m-th derivative E_m/2^{m+1}
        // at 0, with E_m the Euler numbers
        let e20 = 370_371_188_237_525.0f64;
        let v = derivative_kernel(0.5, 0.5, 20, 0.0).unwrap();
        assert_relative_eq!(v, e20 / 2f64.powi(21), max_relative = 1e-13);
    }
}
