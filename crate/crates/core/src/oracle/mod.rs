//! Brute-force evaluators used to cross-check the closed forms: direct
//! quadrature of the defining integrals, ε-limit ladders, and textbook
//! recurrences for the number sequences.

mod phase_space;
pub mod quadrature;
pub mod reference;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::ln_complex_gamma;
use crate::transform::TransformParams;

pub use phase_space::{
    phase_space_expectation, quad_expectation_kappa, quad_expectation_s, quad_wigner, PhaseSpaceObservable,
    SOperator,
};
pub use quadrature::{integrate, integrate_real, QuadratureResult, Tolerance};

/// Settings for the s-integral of the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Half-width S of [-S, S]; `None` picks S from the integrand envelope.
    pub truncation: Option<f64>,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            truncation: None,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_subdivisions: 20_000,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if let Some(s) = self.truncation {
            if !(s > 0.0 && s.is_finite()) {
                return domain(format!("truncation must be positive, got {s}"));
            }
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return domain("tolerances must be positive");
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Default ε values for the limit ladders.
pub const DEFAULT_LADDER: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Smallest S ≥ 40 with 2π S^{m+α+β-1} e^{-πS} < abs_tol.
pub fn envelope_truncation(alpha: f64, beta: f64, m: u32, abs_tol: f64) -> f64 {
    let power = m as f64 + alpha + beta - 1.0;
    let ln_env = |s: f64| (2.0 * std::f64::consts::PI).ln() + power * s.ln() - std::f64::consts::PI * s;
    let target = abs_tol.ln();
    let mut s = 40.0f64;
    while ln_env(s) >= target {
        s *= 1.1;
    }
    s
}

/// Integrand e^{-iλs} s^m Γ(α-is) Γ(β+is). For α = 0 the pole of Γ(-is)
/// at s = 0 is cancelled against one power of s, which requires m ≥ 1.
fn transform_integrand(alpha: f64, beta: f64, m: u32, lambda: f64, s: f64) -> Complex64 {
    let (a, power, extra) = if alpha == 0.0 {
        // s Γ(-is) = i Γ(1-is)
        (1.0, m - 1, Complex64::i())
    } else {
        (alpha, m, Complex64::new(1.0, 0.0))
    };
    if power > 0 && s == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let lg = ln_complex_gamma(Complex64::new(a, -s)).expect("Re > 0 is pole free")
        + ln_complex_gamma(Complex64::new(beta, s)).expect("Re > 0 is pole free")
        + Complex64::new(power as f64 * s.abs().ln(), -lambda * s);
    let mut v = lg.exp() * extra;
    if s < 0.0 && power % 2 == 1 {
        v = -v;
    }
    v
}

fn breakpoints(lambda: f64, half_width: f64, eps: f64) -> Vec<f64> {
    let mut cuts = vec![0.0];
    // resolve the 1/(ε ± is) peak of width ε around the origin
    if eps < 0.5 {
        let mut w = eps;
        while w < 1.0 {
            cuts.push(w);
            cuts.push(-w);
            w *= 4.0;
        }
    }
    if lambda.abs() > 4.0 {
        let step = std::f64::consts::PI / lambda.abs();
        let mut s = 0.5 * step;
        while s < half_width {
            cuts.push(s);
            cuts.push(-s);
            s += step;
        }
    }
    cuts
}

fn quad_raw(alpha: f64, beta: f64, m: u32, lambda: f64, q: &QuadratureSpec) -> Result<QuadratureResult> {
    q.validate()?;
    let half = q
        .truncation
        .unwrap_or_else(|| envelope_truncation(alpha, beta, m, q.abs_tol));
    let eps = if alpha == 0.0 { beta } else { alpha.min(beta) };
    let cuts = breakpoints(lambda, half, eps);
    integrate(
        |s| transform_integrand(alpha, beta, m, lambda, s),
        -half,
        half,
        &cuts,
        q.tolerance(),
    )
}

/// Direct quadrature of ∫ e^{-iλs} s^m Γ(α-is) Γ(β+is) ds over [-S, S].
pub fn quad_transform(p: &TransformParams, q: &QuadratureSpec) -> Result<QuadratureResult> {
    p.validate()?;
    quad_raw(p.alpha, p.beta, p.m, p.lambda, q)
}

/// Polynomial extrapolation of (x_i, y_i) to x = 0 by Neville's scheme.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut t = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            t[i] = (t[i + 1] * xs[i] - t[i] * xs[i + k]) / (xs[i] - xs[i + k]);
        }
    }
    t[0]
}

fn check_ladder(ladder: &[f64]) -> Result<()> {
    if ladder.is_empty() {
        return domain("empty epsilon ladder");
    }
    if ladder.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return domain("epsilon values must lie in (0, 1)");
    }
    if ladder.windows(2).any(|w| w[1] >= w[0]) {
        return domain("epsilon ladder must be strictly decreasing");
    }
    Ok(())
}

/// ε-ladder estimate of the α = β = 0 transform: quadrature at α = 0 and
/// β = ε for each ε, extrapolated to ε = 0. This is the α → 0⁺ limit taken
/// before β → 0⁺.
pub fn quad_transform_limit(m: u32, lambda: f64, ladder: &[f64]) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Divergent(
            "the alpha = beta = 0 limit does not exist for m = 0".into(),
        ));
    }
    check_ladder(ladder)?;
    let q = QuadratureSpec::default();
    let values = ladder
        .iter()
        .map(|&eps| quad_raw(0.0, eps, m, lambda, &q).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(extrapolate_to_zero(ladder, &values))
}

/// ε-ladder estimate of the α → 0⁺ transform at fixed β: quadrature at
/// α = ε extrapolated to ε = 0.
pub fn quad_alpha_zero_limit(beta: f64, m: u32, lambda: f64, ladder: &[f64]) -> Result<Complex64> {
    check_ladder(ladder)?;
    let q = QuadratureSpec::default();
    let values = ladder
        .iter()
        .map(|&eps| {
            let p = TransformParams::new(eps, beta, m, lambda)?;
            quad_transform(&p, &q).map(|r| r.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(extrapolate_to_zero(ladder, &values))
}
