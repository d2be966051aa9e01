//! Gauss hypergeometric series ₂F₁.
//!
//! The terminating case ₂F₁(-M, b; c; z) is a degree-M polynomial and is
//! summed forward term by term, either in `f64` or exactly over the
//! rationals. [`hyp2f1_series`] handles the general convergent series for
//! |z| < 1 in double-double arithmetic, because alternating series with
//! large intermediate terms lose most of their digits in plain `f64`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn check_denominator(m: u32, c: f64) -> Result<()> {
    if c <= 0.0 && c.fract() == 0.0 && -c < m as f64 {
        return Err(Error::Pole(format!(
            "(c)_k vanishes before termination: c = {c}, M = {m}"
        )));
    }
    Ok(())
}

/// ₂F₁(-M, b; c; z) = Σ_{k=0}^{M} (-M)_k (b)_k / (c)_k · z^k / k!.
pub fn hyp2f1_terminating(m: u32, b: f64, c: f64, z: f64) -> Result<f64> {
    check_denominator(m, c)?;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m {
        let kf = k as f64;
        term *= (kf - m as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Exact rational evaluation of ₂F₁(-M, b; c; z).
pub fn hyp2f1_terminating_exact(
    m: u32,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..m {
        let kr = BigRational::from_integer(k.into());
        let denom = c + &kr;
        if denom.is_zero() {
            return Err(Error::Pole(format!(
                "(c)_k vanishes before termination: c = {c}, M = {m}"
            )));
        }
        let minus_m_plus_k = &kr - BigRational::from_integer(m.into());
        term = term * minus_m_plus_k * (b + &kr) * z / (denom * (kr + BigRational::one()));
        sum += &term;
    }
    Ok(sum)
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let v = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(v.hi, v.lo + t.lo)
    }

    fn add_f64(self, b: f64) -> Self {
        self.add(Self::from_f64(b))
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        Self::quick_two_sum(p, err + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Self::from_f64(-q1)));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Self::from_f64(-q2)));
        let q3 = r.hi / o.hi;
        Self::quick_two_sum(q1, q2).add_f64(q3)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Convergent Gauss series ₂F₁(a, b; c; z) for |z| < 1.
///
/// Terms are accumulated in double-double precision; summation stops when a
/// term falls below 1e-32 of the running sum.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!("series requires |z| < 1, got z = {z}")));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::Pole(format!("c = {c} is a non-positive integer")));
    }
    const MAX_TERMS: usize = 200_000;
    let zd = DoubleDouble::from_f64(z);
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = DoubleDouble::from_f64(1.0);
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num = DoubleDouble::two_sum(a, kf).mul(DoubleDouble::two_sum(b, kf));
        let den = DoubleDouble::two_sum(c, kf).mul(DoubleDouble::from_f64(kf + 1.0));
        term = term.mul(num).div(den).mul(zd);
        if term.hi == 0.0 {
            return Ok(sum.to_f64());
        }
        sum = sum.add(term);
        // Terms can pass through tiny values before growing again when a
        // numerator parameter is near a negative integer; require a run.
        if term.hi.abs() <= 1e-32 * sum.hi.abs() && kf > (a.abs() + b.abs()) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(sum.to_f64());
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        estimate: sum.to_f64(),
        error: term.to_f64().abs(),
        subdivisions: MAX_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_argument_is_one() {
        for m in 0..8 {
            assert_eq!(hyp2f1_terminating(m, 1.3, 0.7, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn hand_expansions() {
        // 1 - (2β/β)(1/2) = 0
        for beta in [0.25, 1.0, 3.7] {
            assert_eq!(hyp2f1_terminating(1, 2.0 * beta, beta, 0.5).unwrap(), 0.0);
        }
        // 1 + (-2)(1)/(1/2)(1/2) + (-2)(-1)(1)(2)/((1/2)(3/2)) (1/4)/2 = -1/3
        assert_relative_eq!(hyp2f1_terminating(2, 1.0, 0.5, 0.5).unwrap(), -1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(hyp2f1_terminating_exact(2, &q(1, 1), &q(1, 2), &q(1, 2)).unwrap(), q(-1, 3));
    }

    #[test]
    fn denominator_pole() {
        assert!(matches!(hyp2f1_terminating(3, 1.0, -2.0, 0.5), Err(Error::Pole(_))));
        assert!(hyp2f1_terminating(2, 1.0, -2.0, 0.5).is_ok());
        assert!(matches!(hyp2f1_terminating_exact(3, &q(1, 1), &q(-1, 1), &q(1, 2)), Err(Error::Pole(_))));
    }

    #[test]
    fn exact_matches_float() {
        for m in 0..12u32 {
            for (bn, bd, cn, cd) in [(1, 1, 1, 2), (7, 3, 2, 5), (-5, 2, 9, 4)] {
                let exact = hyp2f1_terminating_exact(m, &q(bn, bd), &q(cn, cd), &q(1, 2)).unwrap();
                let float = hyp2f1_terminating(m, bn as f64 / bd as f64, cn as f64 / cd as f64, 0.5).unwrap();
                let e = exact.to_f64().unwrap();
                assert!((e - float).abs() <= 1e-13 * e.abs().max(1.0), "m={m}: {e} vs {float}");
            }
        }
    }

    #[test]
    fn series_closed_forms() {
        // ₂F₁(1, 1; 2; z) = -ln(1-z)/z
        let z = -0.9;
        assert_relative_eq!(hyp2f1_series(1.0, 1.0, 2.0, z).unwrap(), -(1.0 - z).ln() / z, max_relative = 1e-15);
        // ₂F₁(a, b; b; z) = (1-z)^{-a}
        assert_relative_eq!(hyp2f1_series(3.5, 1.2, 1.2, -0.6).unwrap(), 1.6f64.powf(-3.5), max_relative = 1e-15);
        // terminating input agrees with the polynomial
        let poly = hyp2f1_terminating(4, 2.5, 0.7, 0.3).unwrap();
        assert_relative_eq!(hyp2f1_series(-4.0, 2.5, 0.7, 0.3).unwrap(), poly, max_relative = 1e-14);
        assert!(hyp2f1_series(1.0, 1.0, 2.0, 1.0).is_err());
    }
}
