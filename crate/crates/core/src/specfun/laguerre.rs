/// Generalized Laguerre polynomial L_n^{(a)}(x).
///
/// Forward three-term recurrence
/// (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1} for a > -1, and the
/// explicit sum Σ_k C(n+a, n-k) (-x)^k / k! for a <= -1.
pub fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    if a <= -1.0 {
        return explicit_sum(n, a, x);
    }
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn explicit_sum(n: u32, a: f64, x: f64) -> f64 {
    // C(n+a, n-k) built downward from C(n+a, 0) = 1
    let top = n as f64 + a;
    let mut binom = vec![1.0; n as usize + 1];
    for j in 1..=n as usize {
        binom[j] = binom[j - 1] * (top - (j - 1) as f64) / j as f64;
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 0..=n as usize {
        if k > 0 {
            power *= -x / k as f64;
        }
        sum += binom[n as usize - k] * power;
    }
    sum
}
