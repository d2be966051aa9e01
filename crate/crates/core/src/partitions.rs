//! Integer partitions in multiplicity form and their Faà di Bruno weights.
//!
//! A partition of m with M parts is a vector (i₁, …, i_m) of non-negative
//! integers with Σ ν·i_ν = m and Σ i_ν = M. The Faà di Bruno sum for the
//! m-th derivative of a composite function runs over all such vectors with
//! weight 1 / ∏ i_ν! (ν!)^{i_ν}.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest m accepted by the enumeration (p(64) = 1 741 630 vectors).
pub const MAX_PARTITION_SIZE: u32 = 64;

fn check_guard(m: u32) -> Result<()> {
    if m > MAX_PARTITION_SIZE {
        return Err(Error::Resource(format!(
            "partitions of m = {m} exceed the limit m <= {MAX_PARTITION_SIZE}"
        )));
    }
    Ok(())
}

/// One solution (i₁, …, i_m) of Σ ν·i_ν = m, Σ i_ν = M.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionVector {
    multiplicities: Vec<u8>,
    parts: u32,
}

impl PartitionVector {
    /// Builds a partition from its multiplicities; `multiplicities[ν-1]` is i_ν.
    /// The partitioned value m is the length of the slice.
    pub fn from_multiplicities(multiplicities: &[u32]) -> Result<Self> {
        let m = multiplicities.len();
        let weighted: u64 = multiplicities
            .iter()
            .enumerate()
            .map(|(k, &i)| (k as u64 + 1) * i as u64)
            .sum();
        if weighted != m as u64 {
            return Err(Error::Domain(format!(
                "Σ ν·i_ν = {weighted} does not equal m = {m}"
            )));
        }
        check_guard(m as u32)?;
        let parts = multiplicities.iter().sum();
        Ok(Self {
            multiplicities: multiplicities.iter().map(|&i| i as u8).collect(),
            parts,
        })
    }

    /// The partitioned value m.
    pub fn m(&self) -> u32 {
        self.multiplicities.len() as u32
    }

    /// Number of parts M.
    pub fn parts(&self) -> u32 {
        self.parts
    }

    /// i_ν for ν = 1..=m (index ν-1).
    pub fn multiplicities(&self) -> Vec<u32> {
        self.multiplicities.iter().map(|&i| i as u32).collect()
    }

    /// i_ν, zero for ν outside 1..=m.
    pub fn multiplicity(&self, nu: u32) -> u32 {
        if nu == 0 {
            return 0;
        }
        self.multiplicities.get(nu as usize - 1).map_or(0, |&i| i as u32)
    }

    /// The parts in non-increasing order, e.g. (1,1,0) -> [2, 1].
    pub fn parts_list(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.parts as usize);
        for (k, &i) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(k as u32 + 1, i as usize));
        }
        out
    }
}

impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.multiplicities.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

fn fill(nu: usize, remaining: usize, mult: &mut Vec<u8>, out: &mut Vec<PartitionVector>) {
    if remaining == 0 {
        let parts = mult.iter().map(|&i| i as u32).sum();
        out.push(PartitionVector {
            multiplicities: mult.clone(),
            parts,
        });
        return;
    }
    if nu == 0 {
        return;
    }
    for count in (0..=remaining / nu).rev() {
        mult[nu - 1] = count as u8;
        fill(nu - 1, remaining - count * nu, mult, out);
    }
    mult[nu - 1] = 0;
}

/// All partitions of m, each exactly once, ordered by decreasing number of
/// parts and then reverse-lexicographically on (i₁, i₂, …). For m = 0 the
/// single empty partition is returned.
pub fn enumerate_partitions(m: u32) -> Result<Vec<PartitionVector>> {
    check_guard(m)?;
    let m = m as usize;
    let mut out = Vec::new();
    let mut mult = vec![0u8; m];
    fill(m, m, &mut mult, &mut out);
    out.sort_by(|a, b| {
        b.parts
            .cmp(&a.parts)
            .then_with(|| b.multiplicities.cmp(&a.multiplicities))
    });
    Ok(out)
}

/// p(m), by Euler's pentagonal-number recurrence.
pub fn partition_count(m: u32) -> Result<u64> {
    check_guard(m)?;
    let m = m as usize;
    let mut p = vec![0i64; m + 1];
    p[0] = 1;
    for n in 1..=m {
        let mut total = 0i64;
        for k in 1.. {
            let k = k as usize;
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[n - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                total += sign * p[n - g2];
            }
        }
        p[n] = total;
    }
    Ok(p[m] as u64)
}

fn factorial_big(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Faà di Bruno weight 1 / ∏_ν i_ν! (ν!)^{i_ν}.
pub fn faa_weight(p: &PartitionVector) -> BigRational {
    let mut denom = BigInt::one();
    for (k, &i) in p.multiplicities.iter().enumerate() {
        if i == 0 {
            continue;
        }
        let nu = k as u32 + 1;
        denom *= factorial_big(i as u32);
        denom *= num_traits::pow(factorial_big(nu), i as usize);
    }
    BigRational::new(BigInt::one(), denom)
}

/// Faà di Bruno weights of one m, summed over the partitions sharing a
/// number of parts M. Every sum in this crate over partitions has summands
/// that depend on the partition only through M and its weight, so these
/// totals carry the full information.
#[derive(Debug, Clone)]
pub struct PartsWeights {
    m: u32,
    exact: Vec<BigRational>,
    float: Vec<f64>,
}

impl PartsWeights {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Σ_{p: M(p)=M} faa_weight(p) for M = 0..=m.
    pub fn exact(&self) -> &[BigRational] {
        &self.exact
    }

    pub fn float(&self) -> &[f64] {
        &self.float
    }

    /// (M, weight) pairs with non-zero weight, in increasing M.
    pub fn iter_exact(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.exact
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, w)| (k as u32, w))
    }

    pub fn iter_float(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.float
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(k, &w)| (k as u32, w))
    }
}

fn compute_parts_weights(m: u32) -> Result<PartsWeights> {
    let mut exact = vec![BigRational::zero(); m as usize + 1];
    for p in enumerate_partitions(m)? {
        let w = faa_weight(&p);
        exact[p.parts as usize] += w;
    }
    let float = exact
        .iter()
        .map(|w| w.to_f64().unwrap_or(0.0))
        .collect();
    Ok(PartsWeights { m, exact, float })
}

/// Cached [`PartsWeights`] for m.
pub fn parts_weights(m: u32) -> Result<Arc<PartsWeights>> {
    check_guard(m)?;
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PartsWeights>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("partition cache poisoned").get(&m) {
        return Ok(Arc::clone(hit));
    }
    // computed outside the lock; a concurrent duplicate is harmless
    let fresh = Arc::new(compute_parts_weights(m)?);
    let mut guard = cache.lock().expect("partition cache poisoned");
    Ok(Arc::clone(guard.entry(m).or_insert(fresh)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn vecs(m: u32) -> Vec<Vec<u32>> {
        enumerate_partitions(m)
            .unwrap()
            .iter()
            .map(|p| p.multiplicities())
            .collect()
    }

    /// p(n) restricted to parts <= k, by the two-branch recursion.
    fn count_recursive(n: u32, k: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        let without = count_recursive(n, k - 1);
        if k > n {
            without
        } else {
            without + count_recursive(n - k, k)
        }
    }

    /// Bell numbers from the Bell triangle.
    fn bell_numbers(upto: usize) -> Vec<u64> {
        let mut out = vec![1u64];
        let mut row = vec![1u64];
        for _ in 0..upto {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            out.push(next[0]);
            row = next;
        }
        out
    }

    #[test]
    fn three_has_three_partitions() {
        assert_eq!(vecs(3), vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn zero_is_the_empty_partition() {
        let ps = enumerate_partitions(0).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].parts(), 0);
        assert_eq!(ps[0].m(), 0);
        assert_eq!(faa_weight(&ps[0]), BigRational::one());
    }

    #[test]
    fn four_in_canonical_order() {
        assert_eq!(
            vecs(4),
            vec![
                vec![4, 0, 0, 0],
                vec![2, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn constraints_hold_and_no_duplicates() {
        for m in 0..=20u32 {
            let ps = enumerate_partitions(m).unwrap();
            let mut seen = HashSet::new();
            for p in &ps {
                let mult = p.multiplicities();
                let weighted: u32 = mult.iter().enumerate().map(|(k, &i)| (k as u32 + 1) * i).sum();
                let parts: u32 = mult.iter().sum();
                assert_eq!(weighted, m);
                assert_eq!(parts, p.parts());
                assert!(p.parts() <= m);
                assert_eq!(p.parts() == 0, m == 0);
                assert!(seen.insert(mult));
            }
            assert_eq!(ps.len() as u64, count_recursive(m, m));
            assert_eq!(partition_count(m).unwrap(), count_recursive(m, m));
        }
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(0).unwrap(), 1);
        assert_eq!(partition_count(6).unwrap(), 11);
        assert_eq!(partition_count(7).unwrap(), 15);
        assert_eq!(partition_count(8).unwrap(), 22);
        assert_eq!(partition_count(64).unwrap(), 1_741_630);
    }

    #[test]
    fn guard() {
        assert!(matches!(enumerate_partitions(65), Err(Error::Resource(_))));
        assert!(matches!(partition_count(65), Err(Error::Resource(_))));
    }

    #[test]
    fn weights() {
        let two = PartitionVector::from_multiplicities(&[0, 1]).unwrap();
        assert_eq!(faa_weight(&two), BigRational::new(1.into(), 2.into()));
        let ones = PartitionVector::from_multiplicities(&[2, 0]).unwrap();
        assert_eq!(faa_weight(&ones), BigRational::new(1.into(), 2.into()));
        assert!(PartitionVector::from_multiplicities(&[1, 1]).is_err());
    }

    #[test]
    fn bell_identity() {
        let bell = bell_numbers(7);
        assert_eq!(&bell[..], &[1, 1, 2, 5, 15, 52, 203, 877]);
        for m in 0..=7u32 {
            let total: BigRational = enumerate_partitions(m)
                .unwrap()
                .iter()
                .map(faa_weight)
                .sum::<BigRational>()
                * BigRational::from_integer(factorial_big(m));
            assert_eq!(total, BigRational::from_integer(bell[m as usize].into()), "m = {m}");
        }
    }

    #[test]
    fn parts_weights_aggregate() {
        let w = parts_weights(4).unwrap();
        // 4! Σ_{M} w_M = Bell(4) = 15; S(4, 2) = 7
        let total: BigRational = w.exact().iter().sum();
        assert_eq!(total * BigRational::from_integer(24.into()), BigRational::from_integer(15.into()));
        assert_eq!(&w.exact()[2] * BigRational::from_integer(24.into()), BigRational::from_integer(7.into()));
        assert!(Arc::ptr_eq(&w, &parts_weights(4).unwrap()));
    }

    #[test]
    fn parts_list_display() {
        let p = PartitionVector::from_multiplicities(&[1, 1, 0]).unwrap();
        assert_eq!(p.parts_list(), vec![2, 1]);
        assert_eq!(p.to_string(), "(1,1,0)");
        assert_eq!(p.multiplicity(2), 1);
        assert_eq!(p.multiplicity(9), 0);
    }
}
