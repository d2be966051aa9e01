//! Exact rational number sequences expressed as partition sums.
//!
//! Each function evaluates a finite sum over the partitions of m with exact
//! Faà di Bruno weights, so every result is a reduced [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::partitions::parts_weights;
use crate::specfun::hyp2f1_terminating_exact;

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rising(a: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, k| acc * (a + int(k)))
}

fn alternating(big_m: u32) -> BigRational {
    if big_m.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Σ_M (-1)^M c(M) W_M over the aggregated partition weights of m.
fn signed_sum(m: u32, c: impl Fn(u32) -> Result<BigRational>) -> Result<BigRational> {
    let weights = parts_weights(m)?;
    let mut total = BigRational::zero();
    for (big_m, w) in weights.iter_exact() {
        total += alternating(big_m) * c(big_m)? * w;
    }
    Ok(total)
}

/// E_m(β) for 0 < β < 1 as
/// (-1)^m m! Σ (-1)^M (β)_M W_M ₂F₁(-M, 1; β; 1/2).
pub fn euler_polynomial(m: u32, beta: &BigRational) -> Result<BigRational> {
    if !(beta.is_positive() && *beta < BigRational::one()) {
        return domain(format!("beta must lie in (0, 1), got {beta}"));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    let sum = signed_sum(m, |k| Ok(rising(beta, k) * hyp2f1_terminating_exact(k, &one, beta, &half)?))?;
    Ok(alternating(m) * int(factorial(m)) * sum)
}

/// Γ(M + 1/2)/√π = (2M)!/(4^M M!).
fn half_gamma_ratio(big_m: u32) -> BigRational {
    BigRational::new(
        factorial(2 * big_m),
        BigInt::from(4).pow(big_m) * factorial(big_m),
    )
}

/// Euler number E_m as (-2)^m m! Σ (-1)^M [Γ(M+1/2)/√π] W_M ₂F₁(-M, 1; 1/2; 1/2).
pub fn euler_number(m: u32) -> Result<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    let sum = signed_sum(m, |k| Ok(half_gamma_ratio(k) * hyp2f1_terminating_exact(k, &one, &half, &half)?))?;
    Ok(int(BigInt::from(-2).pow(m)) * int(factorial(m)) * sum)
}

/// Which of the two partition formulas for Bernoulli numbers to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliVariant {
    /// Returns B_{m+1} from the sum Σ (-1/2)^{M+1} M! W_M.
    Shifted,
    /// Returns B_m from the sum Σ (-1/2)^M Γ(M) W_M, starting at B_1 = -1/2.
    Direct,
}

/// Bernoulli numbers from partition sums over m ≥ 1.
///
/// [`BernoulliVariant::Shifted`]:
/// B_{m+1} = (-1)^{m+1} (m+1) m! / (2^{m+1} - 1) Σ (-1/2)^{M+1} M! W_M.
///
/// [`BernoulliVariant::Direct`]:
/// B_m = (-1)^{m+1} m m! / (2^m - 1) Σ (-1/2)^M (M-1)! W_M.
pub fn bernoulli_number(m: u32, variant: BernoulliVariant) -> Result<BigRational> {
    if m == 0 {
        return domain("Bernoulli partition formulas need m >= 1");
    }
    let weights = parts_weights(m)?;
    let minus_half = BigRational::new(-BigInt::one(), BigInt::from(2));
    let sign = alternating(m + 1);
    let mf = int(factorial(m));
    let two = BigInt::from(2);
    match variant {
        BernoulliVariant::Shifted => {
            let mut sum = BigRational::zero();
            for (k, w) in weights.iter_exact() {
                sum += num_traits::pow(minus_half.clone(), k as usize + 1) * int(factorial(k)) * w;
            }
            let denom = int(two.pow(m + 1) - 1);
            Ok(sign * int(m + 1) * mf / denom * sum)
        }
        BernoulliVariant::Direct => {
            let mut sum = BigRational::zero();
            for (k, w) in weights.iter_exact() {
                sum += num_traits::pow(minus_half.clone(), k as usize) * int(factorial(k - 1)) * w;
            }
            let denom = int(two.pow(m) - 1);
            Ok(sign * int(m) * mf / denom * sum)
        }
    }
}

/// (-1)^m m! Σ (-1)^M (β)_M W_M, which reproduces β^m.
pub fn monomial_sum(m: u32, beta: &BigRational) -> Result<BigRational> {
    let sum = signed_sum(m, |k| Ok(rising(beta, k)))?;
    Ok(alternating(m) * int(factorial(m)) * sum)
}

/// Σ (-1)^M M! W_M, the residue (-1)^m/m! of Γ at -m.
pub fn gamma_residue(m: u32) -> Result<BigRational> {
    signed_sum(m, |k| Ok(int(factorial(k))))
}

/// Σ (-1)^M (β)_M W_M, the diagonal Laguerre value L_m^{(-m)}(β).
pub fn laguerre_diagonal(m: u32, beta: &BigRational) -> Result<BigRational> {
    signed_sum(m, |k| Ok(rising(beta, k)))
}

/// Parses "n", "n/d" or "-n/d" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| crate::Error::Domain(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| crate::Error::Domain(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return domain(format!("zero denominator in {s:?}"));
            }
            BigRational::new(n, d)
        }
        None => int(s.parse::<BigInt>().map_err(|_| crate::Error::Domain(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn euler_polynomial_values() {
        assert_eq!(euler_polynomial(0, &q(1, 3)).unwrap(), q(1, 1));
        assert_eq!(euler_polynomial(1, &q(1, 3)).unwrap(), q(-1, 6));
        assert_eq!(euler_polynomial(2, &q(1, 2)).unwrap(), q(-1, 4));
        assert!(euler_polynomial(2, &q(1, 1)).is_err());
        assert!(euler_polynomial(2, &q(0, 1)).is_err());
    }

    #[test]
    fn euler_number_values() {
        assert_eq!(euler_number(0).unwrap(), q(1, 1));
        assert_eq!(euler_number(2).unwrap(), q(-1, 1));
        assert_eq!(euler_number(6).unwrap(), q(-61, 1));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(1, BernoulliVariant::Direct).unwrap(), q(-1, 2));
        assert_eq!(bernoulli_number(1, BernoulliVariant::Shifted).unwrap(), q(1, 6));
        assert_eq!(bernoulli_number(12, BernoulliVariant::Direct).unwrap(), q(-691, 2730));
        assert!(bernoulli_number(0, BernoulliVariant::Direct).is_err());
    }

    #[test]
    fn identities() {
        assert_eq!(monomial_sum(0, &q(5, 7)).unwrap(), q(1, 1));
        assert_eq!(monomial_sum(2, &q(3, 1)).unwrap(), q(9, 1));
        assert_eq!(monomial_sum(5, &q(1, 2)).unwrap(), q(1, 32));
        assert_eq!(gamma_residue(0).unwrap(), q(1, 1));
        assert_eq!(gamma_residue(1).unwrap(), q(-1, 1));
        assert_eq!(gamma_residue(4).unwrap(), q(1, 24));
        assert_eq!(laguerre_diagonal(0, &q(2, 1)).unwrap(), q(1, 1));
        assert_eq!(laguerre_diagonal(2, &q(2, 1)).unwrap(), q(2, 1));
        assert_eq!(laguerre_diagonal(3, &q(1, 2)).unwrap(), q(-1, 48));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_rational(" 4 / -8 ").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
