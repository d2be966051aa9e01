//! Textbook recurrences for the sequences that the partition formulas
//! reproduce. None of these touch the partition machinery.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// B_0..=B_n from Σ_{k=0}^{j} C(j+1, k) B_k = 0 (so B_1 = -1/2).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let c = binomial_table(n + 1);
    let mut b = vec![BigRational::one()];
    for j in 1..=n {
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(c[j + 1][k].clone());
        }
        let lead = BigRational::from_integer(c[j + 1][j].clone());
        b.push(-acc / lead);
    }
    b
}

/// E_0..=E_n (secant numbers with alternating sign, E_2 = -1).
pub fn euler_numbers(n: usize) -> Vec<BigInt> {
    let c = binomial_table(n);
    let mut e: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (j, row) in c.iter().enumerate() {
        if j == 0 {
            e.push(BigInt::one());
        } else if j % 2 == 1 {
            e.push(BigInt::zero());
        } else {
            let acc: BigInt = (0..j).step_by(2).map(|k| &row[k] * &e[k]).sum();
            e.push(-acc);
        }
    }
    e
}

/// E_0(x)..=E_n(x) from E_j(x) = x^j - ½ Σ_{k<j} C(j, k) E_k(x).
pub fn euler_polynomials_at(n: usize, x: &BigRational) -> Vec<BigRational> {
    let c = binomial_table(n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut e: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut power = BigRational::one();
    for row in &c {
        let mut acc = BigRational::zero();
        for (ek, ck) in e.iter().zip(row) {
            acc += ek * BigRational::from_integer(ck.clone());
        }
        e.push(&power - &half * acc);
        power *= x;
    }
    e
}

/// Bell numbers B_0..=B_n from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().expect("non-empty row").clone()];
        for v in &row {
            let s = next.last().expect("non-empty row") + v;
            next.push(s);
        }
        out.push(next[0].clone());
        row = next;
    }
    out.truncate(n + 1);
    out
}

/// Number of partitions of n with every part at most k, by plain recursion
/// with memoisation.
pub fn partitions_bounded(n: u32, k: u32) -> u64 {
    fn go(n: u32, k: u32, memo: &mut std::collections::HashMap<(u32, u32), u64>) -> u64 {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, k)) {
            return v;
        }
        let with_k = if k <= n { go(n - k, k, memo) } else { 0 };
        let v = with_k + go(n, k - 1, memo);
        memo.insert((n, k), v);
        v
    }
    go(n, k, &mut std::collections::HashMap::new())
}

/// p(n) via [`partitions_bounded`].
pub fn partition_number(n: u32) -> u64 {
    partitions_bounded(n, n)
}
