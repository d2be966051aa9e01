//! Acceptance checks comparing every closed form against its oracle. Shared
//! by the `verify` subcommand and the acceptance test target.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::numbers::{
    bernoulli_number, euler_number, euler_polynomial, gamma_residue, laguerre_diagonal, monomial_sum,
    BernoulliVariant,
};
use crate::oracle::{
    self, phase_space_expectation, quad_expectation_kappa, quad_expectation_s, quad_transform, quad_wigner,
    PhaseSpaceObservable, QuadratureSpec, SOperator,
};
use crate::partitions::{enumerate_partitions, faa_weight, partition_count};
use crate::physics::{
    expectation_mu, expectation_pi, expectation_pi2, uncertainty_product, wigner, QuantumIndices,
};
use crate::specfun::gamma;
use crate::transform::{
    eval_alpha_zero, eval_equal_params, eval_transform, eval_transform_negative_lambda, eval_zero_zero,
    TransformParams,
};

/// Which tier of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Fast,
    /// Fast checks plus the nested phase-space quadrature.
    Slow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Raises every numeric tolerance to at least this value.
    pub tol_floor: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: Suite::Fast,
            tol_floor: None,
        }
    }
}

impl VerifyOptions {
    fn tol(&self, pinned: f64) -> f64 {
        self.tol_floor.map_or(pinned, |f| pinned.max(f))
    }
}

/// Outcome of one comparison inside a criterion.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The stated bound contradicts the exact closed form, so this check is
    /// expected to fail. See the README.
    pub known_unattainable: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
            known_unattainable: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] criterion {}: {}", self.id, self.title)?;
        for c in &self.checks {
            let s = match (c.passed, c.known_unattainable) {
                (true, _) => "pass",
                (false, true) => "FAIL (unattainable bound)",
                (false, false) => "FAIL",
            };
            writeln!(f, "    {s:<6} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Tracks the worst relative error over many comparisons.
struct Worst {
    value: f64,
    at: String,
    failures: usize,
    count: usize,
    error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
            failures: 0,
            count: 0,
            error: None,
        }
    }

    fn record(&mut self, err: f64, ok: bool, at: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures += 1;
        }
        if err > self.value || err.is_nan() {
            self.value = err;
            self.at = at();
        }
    }

    fn fail(&mut self, msg: String) {
        self.count += 1;
        self.failures += 1;
        self.error.get_or_insert(msg);
    }

    fn into_check(self, name: &str, tol: f64) -> Check {
        let mut detail = format!(
            "{} comparisons, worst error {:.3e} (tol {tol:.0e}){}",
            self.count,
            self.value,
            if self.at.is_empty() { String::new() } else { format!(" at {}", self.at) }
        );
        if self.failures > 0 {
            detail.push_str(&format!(", {} over tolerance", self.failures));
        }
        if let Some(e) = self.error {
            detail.push_str(&format!(", first error: {e}"));
        }
        Check::new(name, self.failures == 0, detail)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn close(name: &str, got: Complex64, want: Complex64, tol: f64) -> Check {
    let e = rel(got, want);
    Check::new(name, e <= tol, format!("got {got:.15}, want {want:.15}, rel err {e:.2e} (tol {tol:.0e})"))
}

fn transform(alpha: f64, beta: f64, m: u32, lambda: f64) -> crate::Result<Complex64> {
    eval_transform(&TransformParams::new(alpha, beta, m, lambda)?)
}

/// Closed form against direct quadrature on the full parameter grid.
pub fn criterion_1(opts: &VerifyOptions) -> CriterionReport {
    let start = Instant::now();
    let grid_ab = [0.3, 0.5, 1.0, 1.7, 2.5];
    let lambdas = [-2.0, -0.5, 0.0, 0.7, 2.0];
    let mut points = Vec::new();
    for &alpha in &grid_ab {
        for &beta in &grid_ab {
            for m in 0..=6u32 {
                for &lambda in &lambdas {
                    points.push((alpha, beta, m, lambda));
                }
            }
        }
    }
    let rel_tol = opts.tol(1e-8);
    let abs_tol = opts.tol(1e-10);
    let spec = QuadratureSpec::default();
    let results: Vec<_> = points
        .par_iter()
        .map(|&(alpha, beta, m, lambda)| {
            let p = TransformParams::new(alpha, beta, m, lambda)?;
            let cf = eval_transform(&p)?;
            let q = quad_transform(&p, &spec)?.value;
            Ok::<_, crate::Error>((cf, q))
        })
        .collect();
    let mut worst = Worst::new();
    for (&(alpha, beta, m, lambda), r) in points.iter().zip(results) {
        match r {
            Ok((cf, q)) => {
                let diff = (cf - q).norm();
                let (err, ok) = if cf.norm() < 1e-6 {
                    (diff, diff <= abs_tol)
                } else {
                    let e = diff / cf.norm();
                    (e, e <= rel_tol)
                };
                worst.record(err, ok, || format!("(α={alpha}, β={beta}, m={m}, λ={lambda})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    CriterionReport {
        id: 1,
        title: "closed form vs quadrature grid",
        checks: vec![
            worst.into_check("grid agreement", rel_tol),
            Check::new("runtime", elapsed < 60.0, format!("{elapsed:.2} s (limit 60 s)")),
        ],
    }
}

/// Anchor values against their analytic constants.
pub fn criterion_2(opts: &VerifyOptions) -> CriterionReport {
    let tol = opts.tol(1e-12);
    let c = |v: f64| Complex64::new(v, 0.0);
    let mut checks = Vec::new();
    let mut push = |name: &str, got: crate::Result<Complex64>, want: Complex64| {
        checks.push(match got {
            Ok(v) => close(name, v, want, tol),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    };
    push("F_2 at alpha = beta = 0, lambda = 0 is pi/2", eval_zero_zero(2, 0.0), c(PI / 2.0));
    push("F_4 at alpha = beta = 1/2, lambda = 0 is 5 pi/16", transform(0.5, 0.5, 4, 0.0), c(5.0 * PI / 16.0));
    push("F_0 at alpha = beta = 1, lambda = 0 is pi/2", transform(1.0, 1.0, 0, 0.0), c(PI / 2.0));
    push("alpha = 0, beta = 1, m = 0, lambda = 0 is pi", eval_alpha_zero(1.0, 0, 0.0), c(PI));
    for beta in [0.5f64, 1.0, 2.0] {
        let want = PI * (1.0 - 2.0 * beta).exp2() * gamma(2.0 * beta).expect("small argument");
        push(
            &format!("equal parameters beta = {beta}: pi 2^(1-2 beta) Gamma(2 beta)"),
            eval_equal_params(beta, 0, 0.0),
            c(want),
        );
    }
    CriterionReport {
        id: 2,
        title: "anchor values",
        checks,
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_check<E: fmt::Debug>(name: &str, mismatches: Vec<String>, errors: Vec<E>, count: usize) -> Check {
    let passed = mismatches.is_empty() && errors.is_empty();
    let detail = if passed {
        format!("{count} values equal")
    } else {
        format!(
            "{} mismatches {:?}, {} errors {:?}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            errors.len(),
            errors.iter().take(3).collect::<Vec<_>>()
        )
    };
    Check::new(name, passed, detail)
}

/// Exact number sequences against textbook recurrences.
pub fn criterion_3(_opts: &VerifyOptions) -> CriterionReport {
    let mut checks = Vec::new();

    let reference = oracle::reference::bernoulli_numbers(20);
    let (mut bad, mut errs, mut n) = (Vec::new(), Vec::new(), 0);
    for m in 1..=20u32 {
        n += 1;
        match bernoulli_number(m, BernoulliVariant::Direct) {
            Ok(v) if v == reference[m as usize] => {}
            Ok(v) => bad.push(format!("B_{m}: {v} vs {}", reference[m as usize])),
            Err(e) => errs.push(e),
        }
    }
    for m in 1..=19u32 {
        n += 1;
        match bernoulli_number(m, BernoulliVariant::Shifted) {
            Ok(v) if v == reference[m as usize + 1] => {}
            Ok(v) => bad.push(format!("B_{}: {v}", m + 1)),
            Err(e) => errs.push(e),
        }
    }
    checks.push(exact_check("Bernoulli numbers, both forms, m <= 20", bad, errs, n));

    let reference = oracle::reference::euler_numbers(16);
    let (mut bad, mut errs) = (Vec::new(), Vec::new());
    for m in 0..=16u32 {
        match euler_number(m) {
            Ok(v) if v == BigRational::from_integer(reference[m as usize].clone()) => {}
            Ok(v) => bad.push(format!("E_{m}: {v}")),
            Err(e) => errs.push(e),
        }
    }
    checks.push(exact_check("Euler numbers, m <= 16", bad, errs, 17));

    let (mut bad, mut errs, mut n) = (Vec::new(), Vec::new(), 0);
    for beta in [q(1, 3), q(1, 2), q(2, 3)] {
        let reference = oracle::reference::euler_polynomials_at(8, &beta);
        for m in 0..=8u32 {
            n += 1;
            match euler_polynomial(m, &beta) {
                Ok(v) if v == reference[m as usize] => {}
                Ok(v) => bad.push(format!("E_{m}({beta}): {v}")),
                Err(e) => errs.push(e),
            }
        }
    }
    checks.push(exact_check("Euler polynomials at 1/3, 1/2, 2/3, m <= 8", bad, errs, n));

    let (mut bad, mut errs, mut n) = (Vec::new(), Vec::new(), 0);
    for m in 0..=10u32 {
        let fact = BigRational::from_integer((1..=m).fold(BigInt::one(), |a, k| a * k));
        let sign = if m % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        n += 1;
        match gamma_residue(m) {
            Ok(v) if v == &sign / &fact => {}
            Ok(v) => bad.push(format!("residue m={m}: {v}")),
            Err(e) => errs.push(e),
        }
        for beta in [q(1, 7), q(2, 1), q(5, 3), q(-1, 2)] {
            let power = num_traits::pow(beta.clone(), m as usize);
            n += 2;
            match monomial_sum(m, &beta) {
                Ok(v) if v == power => {}
                Ok(v) => bad.push(format!("monomial m={m}, beta={beta}: {v}")),
                Err(e) => errs.push(e),
            }
            match laguerre_diagonal(m, &beta) {
                Ok(v) if v == &sign * &power / &fact => {}
                Ok(v) => bad.push(format!("laguerre m={m}, beta={beta}: {v}")),
                Err(e) => errs.push(e),
            }
        }
    }
    checks.push(exact_check("monomial, residue and diagonal Laguerre identities, m <= 10", bad, errs, n));

    CriterionReport {
        id: 3,
        title: "exact number theory",
        checks,
    }
}

/// Multiplicities of one partition with its part count.
type TableColumn = (&'static [u32], u32);

/// Multiplicity columns of the reference partition table for m = 1..=5.
const PARTITION_TABLE: &[(u32, &[TableColumn])] = &[
    (1, &[(&[1], 1)]),
    (2, &[(&[2, 0], 2), (&[0, 1], 1)]),
    (3, &[(&[3, 0, 0], 3), (&[1, 1, 0], 2), (&[0, 0, 1], 1)]),
    (
        4,
        &[
            (&[4, 0, 0, 0], 4),
            (&[2, 1, 0, 0], 3),
            (&[1, 0, 1, 0], 2),
            (&[0, 2, 0, 0], 2),
            (&[0, 0, 0, 1], 1),
        ],
    ),
    (
        5,
        &[
            (&[5, 0, 0, 0, 0], 5),
            (&[3, 1, 0, 0, 0], 4),
            (&[2, 0, 1, 0, 0], 3),
            (&[1, 2, 0, 0, 0], 3),
            (&[1, 0, 0, 1, 0], 2),
            (&[0, 1, 1, 0, 0], 2),
            (&[0, 0, 0, 0, 1], 1),
        ],
    ),
];

/// Partition counts, the reference table and the Bell-number identity.
pub fn criterion_4(_opts: &VerifyOptions) -> CriterionReport {
    let mut checks = Vec::new();
    let counts: Vec<_> = [6u32, 7, 8].iter().map(|&m| partition_count(m).ok()).collect();
    checks.push(Check::new(
        "partition counts for m = 6, 7, 8",
        counts == [Some(11), Some(15), Some(22)],
        format!("{counts:?} (want 11, 15, 22)"),
    ));

    let mut table_ok = true;
    let mut detail = String::from("m = 1..5 match as sets");
    for &(m, columns) in PARTITION_TABLE {
        let mut want: Vec<(Vec<u32>, u32)> = columns.iter().map(|(c, big_m)| (c.to_vec(), *big_m)).collect();
        let mut got: Vec<(Vec<u32>, u32)> = enumerate_partitions(m)
            .map(|ps| ps.iter().map(|p| (p.multiplicities(), p.parts())).collect())
            .unwrap_or_default();
        want.sort();
        got.sort();
        if want != got {
            table_ok = false;
            detail = format!("m = {m}: got {got:?}");
            break;
        }
    }
    checks.push(Check::new("reference partition table, m <= 5", table_ok, detail));

    let bell = oracle::reference::bell_numbers(7);
    let mut bell_ok = true;
    let mut got_all = Vec::new();
    for m in 0..=7u32 {
        let fact = BigRational::from_integer((1..=m).fold(BigInt::one(), |a, k| a * k));
        let total: BigRational = enumerate_partitions(m)
            .map(|ps| ps.iter().map(|p| &fact * faa_weight(p)).sum())
            .unwrap_or_default();
        bell_ok &= total == BigRational::from_integer(bell[m as usize].clone());
        got_all.push(total.to_string());
    }
    checks.push(Check::new(
        "Bell numbers from weights, m <= 7",
        bell_ok,
        format!("[{}]", got_all.join(", ")),
    ));
    CriterionReport {
        id: 4,
        title: "partition layer",
        checks,
    }
}

/// Expectation values against closed forms and both quadrature oracles.
pub fn criterion_5(opts: &VerifyOptions) -> CriterionReport {
    let mut checks = Vec::new();
    let tol = opts.tol(1e-10);
    let mut worst = Worst::new();
    for l in [0.0, 1.0, 5.0, 10.0] {
        match (expectation_pi2(0, l), expectation_mu(2, 0, l)) {
            (Ok(p2), Ok(m2)) => {
                let e1 = (p2 - 1.0).abs();
                let e2 = (m2 - (l + 1.5)).abs() / (l + 1.5);
                worst.record(e1.max(e2), e1 <= tol && e2 <= tol, || format!("l = {l}"));
            }
            (Err(e), _) | (_, Err(e)) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("<pi^2>_0,l = 1 and <mu^2>_0,l = l + 3/2", tol));

    let tol = opts.tol(1e-6);
    let cases: Vec<(u32, f64, u32)> = (0..=3)
        .flat_map(|n| [0.0, 1.0, 2.0].into_iter().flat_map(move |l| [1, 2].map(|q| (n, l, q))))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(n, l, q)| Ok::<_, crate::Error>((expectation_mu(q, n, l)?, quad_expectation_kappa(n, l, q)?)))
        .collect();
    let mut worst = Worst::new();
    for (&(n, l, q), r) in cases.iter().zip(results) {
        match r {
            Ok((cf, orc)) => {
                let e = rel(Complex64::new(cf, 0.0), Complex64::new(orc, 0.0));
                worst.record(e, e <= tol, || format!("(n={n}, l={l}, q={q})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("<mu^q> vs kappa-space quadrature, n <= 3", tol));

    let cases: Vec<(u32, f64, SOperator)> = (0..=2)
        .flat_map(|n| [0.0, 1.0].into_iter().flat_map(move |l| [SOperator::Pi, SOperator::Pi2].map(|w| (n, l, w))))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(n, l, which)| {
            let cf = match which {
                SOperator::Pi => expectation_pi(n, l)?,
                SOperator::Pi2 => Complex64::new(expectation_pi2(n, l)?, 0.0),
            };
            Ok::<_, crate::Error>((cf, quad_expectation_s(n, l, which)?))
        })
        .collect();
    let mut worst = Worst::new();
    for (&(n, l, which), r) in cases.iter().zip(results) {
        match r {
            Ok((cf, orc)) => {
                let e = rel(cf, orc);
                worst.record(e, e <= tol, || format!("(n={n}, l={l}, {which:?})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("<pi>, <pi^2> vs s-space quadrature, n <= 2", tol));
    CriterionReport {
        id: 5,
        title: "physics closed forms",
        checks,
    }
}

/// Bounds and limits of the uncertainty product.
pub fn criterion_6(_opts: &VerifyOptions) -> CriterionReport {
    let mut checks = Vec::new();
    let ground: Vec<_> = (0..=20).map(|l| uncertainty_product(0, l as f64)).collect();
    let inside = ground.iter().all(|v| matches!(v, Ok(x) if *x > 0.5 && *x < 0.75));
    let (lo, hi) = ground
        .iter()
        .filter_map(|v| v.as_ref().ok())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    checks.push(Check::new(
        "1/2 < product < 3/4 for n = 0, l = 0..20",
        inside,
        format!("range [{lo:.6}, {hi:.6}]"),
    ));

    let mut ok = true;
    let mut parts = Vec::new();
    for n in 0..=2u32 {
        let target = n as f64 + 0.5;
        match uncertainty_product(n, 1000.0) {
            Ok(v) => {
                let e = (v - target).abs() / target;
                ok &= e < 0.02;
                parts.push(format!("n={n}: {v:.6} ({:.3}%)", 100.0 * e));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("n={n}: {e}"));
            }
        }
    }
    checks.push(Check::new("product within 2% of n + 1/2 at l = 1000", ok, parts.join(", ")));

    let seq: Vec<_> = [1.0, 10.0, 100.0, 1000.0].iter().map(|&l| uncertainty_product(0, l)).collect();
    let values: Vec<f64> = seq.iter().filter_map(|v| v.as_ref().ok().copied()).collect();
    let decreasing = values.len() == 4 && values.windows(2).all(|w| w[1] < w[0]);
    checks.push(Check::new(
        "strictly decreasing over l = 1, 10, 100, 1000 at n = 0",
        decreasing,
        format!("{values:?}"),
    ));
    CriterionReport {
        id: 6,
        title: "uncertainty products",
        checks,
    }
}

/// Sample points (x, p) for the Wigner comparison, all at a = 1.
pub const WIGNER_POINTS: [(f64, f64); 5] = [(0.5, 0.0), (0.3, 0.7), (1.0, -0.4), (1.5, 1.2), (2.2, 0.3)];

/// Index pairs (n, l) for the Wigner comparison.
pub const WIGNER_STATES: [(u32, f64); 4] = [(0, 0.0), (1, 0.0), (1, 1.0), (2, 1.0)];

/// Closed-form Wigner function against its defining integral, and in the
/// slow tier the phase-space reconstruction of ⟨π²⟩.
pub fn criterion_7(opts: &VerifyOptions) -> CriterionReport {
    let tol = opts.tol(1e-6);
    let cases: Vec<_> = WIGNER_STATES
        .iter()
        .flat_map(|&s| WIGNER_POINTS.iter().map(move |&pt| (s, pt)))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&((n, l), (x, p))| {
            let idx = QuantumIndices::new(n, l, 1.0)?;
            Ok::<_, crate::Error>((wigner(&idx, x, p)?, quad_wigner(&idx, x, p)?))
        })
        .collect();
    let mut worst = Worst::new();
    for (&((n, l), (x, p)), r) in cases.iter().zip(results) {
        match r {
            Ok((cf, orc)) => {
                let e = rel(Complex64::new(cf, 0.0), Complex64::new(orc, 0.0));
                worst.record(e, e <= tol, || format!("(n={n}, l={l}, x={x}, p={p})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    let mut checks = vec![worst.into_check("closed form vs defining integral", tol)];
    if opts.suite == Suite::Slow {
        let tol = opts.tol(1e-3);
        for a in [1.0, 2.0] {
            let name = format!("phase-space <pi^2>_0,0 = 1 at a = {a}");
            let check = QuantumIndices::new(0, 0.0, a)
                .and_then(|idx| phase_space_expectation(&idx, PhaseSpaceObservable::Pi(2), 1e-6));
            checks.push(match check {
                Ok(v) => close(&name, v, Complex64::new(1.0, 0.0), tol),
                Err(e) => Check::new(name, false, e.to_string()),
            });
        }
    }
    CriterionReport {
        id: 7,
        title: "Wigner function",
        checks,
    }
}

/// Symmetries, recurrences and limits of the transform.
pub fn criterion_8(opts: &VerifyOptions) -> CriterionReport {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut checks = Vec::new();
    let mut random_params = |n: usize| -> Vec<(f64, f64, u32, f64)> {
        (0..n)
            .map(|_| {
                (
                    rng.gen_range(0.3..3.0),
                    rng.gen_range(0.3..3.0),
                    rng.gen_range(0..=6u32),
                    rng.gen_range(-3.0..3.0),
                )
            })
            .collect()
    };

    let tol = opts.tol(1e-12);
    let mut worst = Worst::new();
    for (alpha, beta, m, lambda) in random_params(200) {
        match transform(alpha, beta, m, lambda) {
            Ok(v) => {
                let rotated = v * Complex64::i().powu(m);
                let e = if rotated.norm() == 0.0 { 0.0 } else { rotated.im.abs() / rotated.norm() };
                worst.record(e, e <= tol, || format!("(α={alpha:.3}, β={beta:.3}, m={m}, λ={lambda:.3})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("i^m F is real", tol));

    let tol = opts.tol(1e-10);
    let mut worst = Worst::new();
    for (alpha, beta, m, lambda) in random_params(100) {
        match (transform(alpha, beta, m, lambda), transform(beta, alpha, m, -lambda)) {
            (Ok(a), Ok(b)) => {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let e = rel(a, b * sign);
                worst.record(e, e <= tol, || format!("(α={alpha:.3}, β={beta:.3}, m={m}, λ={lambda:.3})"));
            }
            (Err(e), _) | (_, Err(e)) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("swap symmetry F(α,β,λ) = (-1)^m F(β,α,-λ)", tol));

    let tol = opts.tol(1e-9);
    let mut worst = Worst::new();
    for (alpha, beta, m, lambda) in random_params(60) {
        let r = (|| {
            let f = transform(alpha, beta, m, lambda)?;
            let f_next = transform(alpha, beta, m + 1, lambda)?;
            let up_a = transform(alpha + 1.0, beta, m, lambda)?;
            let up_b = transform(alpha, beta + 1.0, m, lambda)?;
            Ok::<_, crate::Error>((
                rel(up_a, f * alpha - Complex64::i() * f_next),
                rel(up_b, f * beta + Complex64::i() * f_next),
            ))
        })();
        match r {
            Ok((ea, eb)) => {
                let e = ea.max(eb);
                worst.record(e, e <= tol, || format!("(α={alpha:.3}, β={beta:.3}, m={m}, λ={lambda:.3})"));
            }
            Err(e) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("contiguous recurrences in α and β", tol));

    let tol = opts.tol(1e-6);
    let h = 1e-5;
    let mut worst = Worst::new();
    for (alpha, beta, _, lambda) in random_params(40) {
        let r = (|| {
            let fd = (transform(alpha, beta, 0, lambda + h)? - transform(alpha, beta, 0, lambda - h)?) / (2.0 * h);
            let d = -Complex64::i() * transform(alpha, beta, 1, lambda)?;
            Ok::<_, crate::Error>(rel(fd, d))
        })();
        match r {
            Ok(e) => worst.record(e, e <= tol, || format!("(α={alpha:.3}, β={beta:.3}, λ={lambda:.3})")),
            Err(e) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("dF_0/dλ = -i F_1 by central difference", tol));

    let grid = [0.3, 0.5, 1.0, 2.0, 3.0];
    let mut failing = Vec::new();
    let mut errors = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for &alpha in &grid {
        for &beta in &grid {
            for lambda in [-20.0, 20.0] {
                match (transform(alpha, beta, 0, lambda), transform(alpha, beta, 0, 0.0)) {
                    (Ok(far), Ok(center)) => {
                        let ratio = far.norm() / center.norm();
                        worst_ratio = worst_ratio.max(ratio);
                        if ratio >= 1e-6 {
                            failing.push(format!("(α={alpha}, β={beta}, λ={lambda}): {ratio:.2e}"));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => errors.push(e.to_string()),
                }
            }
        }
    }
    let mut decay = Check::new(
        "|F_0(±20)| < 1e-6 |F_0(0)| for α, β in [0.3, 3]",
        failing.is_empty() && errors.is_empty(),
        format!(
            "largest ratio {worst_ratio:.2e}; {} of 50 points fail, e.g. {:?}; the exact ratio is about 2^(α+β) e^(-20 min(α,β)) and exceeds 1e-6 whenever min(α,β) < 0.7",
            failing.len(),
            failing.iter().take(2).collect::<Vec<_>>()
        ),
    );
    decay.known_unattainable = errors.is_empty() && !failing.is_empty();
    checks.push(decay);

    let tol = opts.tol(1e-12);
    let mut worst = Worst::new();
    for beta in [0.3, 0.5, 1.0, 1.7, 2.5] {
        for m in [1, 3, 5, 7] {
            match transform(beta, beta, m, 0.0) {
                Ok(v) => worst.record(v.norm(), v.norm() <= tol, || format!("(β={beta}, m={m})")),
                Err(e) => worst.fail(e.to_string()),
            }
        }
    }
    checks.push(worst.into_check("odd m vanishes at α = β, λ = 0 (absolute)", tol));

    let tol = opts.tol(1e-10);
    let mut worst = Worst::new();
    for &alpha in &[0.3, 1.0, 2.5] {
        for &beta in &[0.3, 1.0, 2.5] {
            for m in 0..=6 {
                for lambda in [-3.0, -2.0, -1.0, -0.5] {
                    let r = TransformParams::new(alpha, beta, m, lambda)
                        .and_then(|p| Ok((eval_transform(&p)?, eval_transform_negative_lambda(&p)?)));
                    match r {
                        Ok((a, b)) => {
                            let e = rel(a, b);
                            worst.record(e, e <= tol, || format!("(α={alpha}, β={beta}, m={m}, λ={lambda})"));
                        }
                        Err(e) => worst.fail(e.to_string()),
                    }
                }
            }
        }
    }
    checks.push(worst.into_check("λ < 0 series form agrees with the terminating form", tol));

    let tol = opts.tol(1e-12);
    let mut worst = Worst::new();
    for (beta, _, m, lambda) in random_params(60) {
        match (eval_equal_params(beta, m, lambda), transform(beta, beta, m, lambda)) {
            (Ok(a), Ok(b)) => {
                let e = rel(a, b);
                worst.record(e, e <= tol, || format!("(β={beta:.3}, m={m}, λ={lambda:.3})"));
            }
            (Err(e), _) | (_, Err(e)) => worst.fail(e.to_string()),
        }
    }
    checks.push(worst.into_check("equal-parameter form matches the general form", tol));

    CriterionReport {
        id: 8,
        title: "transform invariants",
        checks,
    }
}

/// Runs every criterion in order.
pub fn run(opts: &VerifyOptions) -> Vec<CriterionReport> {
    vec![
        criterion_1(opts),
        criterion_2(opts),
        criterion_3(opts),
        criterion_4(opts),
        criterion_5(opts),
        criterion_6(opts),
        criterion_7(opts),
        criterion_8(opts),
    ]
}
