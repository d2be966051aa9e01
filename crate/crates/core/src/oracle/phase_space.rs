use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate, integrate_real, Tolerance};
use super::{quad_transform, QuadratureSpec};
use crate::error::{domain, Error, Result};
use crate::physics::{
    eigenfunction, gamma_coefficient, weyl_transform_mu, weyl_transform_pi, wigner, QuantumIndices,
};
use crate::specfun::{laguerre, ln_factorial, ln_gamma};
use crate::transform::TransformParams;

/// Half-width in y beyond which ψ(x - y/2) ψ(x + y/2) is below 1e-17 of
/// its largest sampled magnitude.
fn overlap_half_width(idx: &QuantumIndices, x: f64) -> Result<f64> {
    let step = 0.25 / idx.a.abs();
    let g = |y: f64| -> Result<f64> { Ok((eigenfunction(idx, x - 0.5 * y)? * eigenfunction(idx, x + 0.5 * y)?).abs()) };
    let mut peak = g(0.0)?;
    let mut y = 0.0;
    let mut quiet = 0;
    // require a run of quiet samples
    while quiet < 12 {
        y += step;
        let v = g(y)?;
        peak = peak.max(v);
        if v <= 1e-17 * peak {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if y > 1e4 / idx.a.abs() {
            return Err(Error::NonConvergence {
                estimate: v,
                error: peak,
                subdivisions: 0,
            });
        }
    }
    Ok(y)
}

/// Wigner function from its definition,
/// (1/2π) ∫ e^{-ipy} ψ(x - y/2) ψ(x + y/2) dy.
pub fn quad_wigner(idx: &QuantumIndices, x: f64, p: f64) -> Result<f64> {
    let half = overlap_half_width(idx, x)?;
    let mut cuts = vec![0.0];
    if p.abs() * half > 20.0 {
        let step = PI / p.abs();
        let mut y = step;
        while y < half {
            cuts.push(y);
            cuts.push(-y);
            y += step;
        }
    }
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let r = integrate(
        |y| {
            let psi = eigenfunction(idx, x - 0.5 * y).and_then(|u| Ok(u * eigenfunction(idx, x + 0.5 * y)?));
            match psi {
                Ok(v) => Complex64::from_polar(v, -p * y),
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        -half,
        half,
        &cuts,
        Tolerance {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_subdivisions: 20_000,
        },
    )?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let w = r.value / (2.0 * PI);
    if w.im.abs() > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "quadrature Wigner function has imaginary part {:e}",
            w.im
        )));
    }
    Ok(w.re)
}

/// ⟨μ^q⟩ as the κ-integral
/// [n!/Γ(n+l+3/2)] ∫₀^∞ κ^{l+(q+1)/2} e^{-κ} [L_n^{(l+1/2)}(κ)]² dκ.
pub fn quad_expectation_kappa(n: u32, l: f64, q: u32) -> Result<f64> {
    if q != 1 && q != 2 {
        return domain(format!("q must be 1 or 2, got {q}"));
    }
    QuantumIndices::new(n, l, 1.0)?;
    let power = l + (q as f64 + 1.0) / 2.0;
    let ln_norm = ln_factorial(n) - ln_gamma(n as f64 + l + 1.5)?;
    let upper = 60.0 + 4.0 * (n as f64 + power.max(0.0));
    let mut cuts = Vec::new();
    let mut c = 0.5;
    while c < upper {
        cuts.push(c);
        c *= 2.0;
    }
    let (v, _) = integrate_real(
        |k| {
            if k == 0.0 {
                return 0.0;
            }
            let lg = laguerre(n, l + 0.5, k);
            (ln_norm + power * k.ln() - k).exp() * lg * lg
        },
        0.0,
        upper,
        &cuts,
        Tolerance {
            abs_tol: 1e-15,
            rel_tol: 1e-13,
            max_subdivisions: 10_000,
        },
    )?;
    Ok(v)
}

/// Momentum operator selected for [`quad_expectation_s`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SOperator {
    Pi,
    Pi2,
}

/// ⟨π⟩ or ⟨π²⟩ assembled from s-integrals
/// Q_m(u, v) = ∫ s^m Γ(u - is) Γ(v + is) ds evaluated by quadrature:
///
/// ⟨π⟩ = (2/π) Σ γ [2^{l+l1+l2} Q_1(ς1, ς2) + i 2^{l+l1+l2-2} Q_0(ς1, ς2)],
/// ς_j = l/2 + l_j + 1/2;
///
/// ⟨π²⟩ = (2/π) Σ γ [2^{l+l1+l2+1/2} Q_2(ζ1, ζ2) + i 2^{l+l1+l2-1/2} Q_1(ζ1, ζ2)],
/// ζ_j = l/2 + l_j + 1/4.
pub fn quad_expectation_s(n: u32, l: f64, which: SOperator) -> Result<Complex64> {
    QuantumIndices::new(n, l, 1.0)?;
    let (offset, m_hi, e_hi, e_lo) = match which {
        SOperator::Pi => (0.5, 1, 0.0, -2.0),
        SOperator::Pi2 => (0.25, 2, 0.5, -0.5),
    };
    if l / 2.0 + offset <= 0.0 {
        return domain(format!("s-integral parameters must be positive, l = {l}"));
    }
    let spec = QuadratureSpec::default();
    let q = |u: f64, v: f64, m: u32| -> Result<Complex64> {
        Ok(quad_transform(&TransformParams::new(u, v, m, 0.0)?, &spec)?.value)
    };
    let mut total = Complex64::new(0.0, 0.0);
    for l1 in 0..=n {
        for l2 in 0..=n {
            let g = gamma_coefficient(n, l, l1, l2)?;
            let u = l / 2.0 + l1 as f64 + offset;
            let v = l / 2.0 + l2 as f64 + offset;
            let base = l + (l1 + l2) as f64;
            let term = q(u, v, m_hi)? * (base + e_hi).exp2()
                + Complex64::i() * q(u, v, m_hi - 1)? * (base + e_lo).exp2();
            total += term * g;
        }
    }
    Ok(total * (2.0 / PI))
}

/// Observable for [`phase_space_expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSpaceObservable {
    /// μ^q with q ∈ {1, 2}.
    Mu(u32),
    /// π^q with q ∈ {1, 2}.
    Pi(u32),
}

/// ∫dx ∫dp W(x, p) 𝔚[O](x, p) with the closed-form Wigner function and the
/// Weyl symbol of O, by nested adaptive quadrature. Slow.
pub fn phase_space_expectation(idx: &QuantumIndices, obs: PhaseSpaceObservable, rel_tol: f64) -> Result<Complex64> {
    let a = idx.a;
    let q = match obs {
        PhaseSpaceObservable::Mu(q) | PhaseSpaceObservable::Pi(q) => q,
    };
    if q != 1 && q != 2 {
        return domain(format!("q must be 1 or 2, got {q}"));
    }
    // x range from κ ∈ [κ_lo, κ_hi]; x decreases as κ grows when a > 0
    let kappa_hi = 80.0 + 2.0 * (idx.n as f64 + idx.l.max(0.0));
    let kappa_lo: f64 = 1e-14;
    let x_of = |k: f64| (4f64.ln() - 2.0 * a.abs().ln() - k.ln()) / a;
    let (x0, x1) = {
        let (u, v) = (x_of(kappa_hi), x_of(kappa_lo));
        (u.min(v), u.max(v))
    };
    let p_max = 14.0 * a.abs();
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let inner_tol = Tolerance {
        abs_tol: 1e-13,
        rel_tol: 0.1 * rel_tol,
        max_subdivisions: 4000,
    };
    let outer = |x: f64| -> Result<Complex64> {
        let r = integrate(
            |p| {
                let w = match wigner(idx, x, p) {
                    Ok(w) => w,
                    Err(e) => {
                        err.borrow_mut().get_or_insert(e);
                        return Complex64::new(0.0, 0.0);
                    }
                };
                let symbol = match obs {
                    PhaseSpaceObservable::Mu(q) => weyl_transform_mu(q, x, a).map(|v| Complex64::new(v, 0.0)),
                    PhaseSpaceObservable::Pi(q) => weyl_transform_pi(q, x, p, a),
                };
                match symbol {
                    Ok(s) => s * w,
                    Err(e) => {
                        err.borrow_mut().get_or_insert(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            -p_max,
            p_max,
            &[0.0],
            inner_tol,
        )?;
        Ok(r.value)
    };
    // breakpoints at κ = 2^k so the x-panels follow the density
    let mut cuts = Vec::new();
    let mut k = 1.0;
    while k < kappa_hi {
        cuts.push(x_of(k));
        k *= 2.0;
    }
    let mut k = 0.5;
    while k > kappa_lo {
        cuts.push(x_of(k));
        k /= 4.0;
    }
    let r = integrate(
        |x| match outer(x) {
            Ok(v) => v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        x0,
        x1,
        &cuts,
        Tolerance {
            abs_tol: 1e-12,
            rel_tol,
            max_subdivisions: 2000,
        },
    )?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eigenfunctions_are_normalized() {
        for (n, l, a) in [(0, 0.0, 1.0), (2, 1.0, 1.0), (1, 0.5, 2.5), (1, 0.0, -1.0)] {
            let idx = QuantumIndices::new(n, l, a).unwrap();
            let (norm, _) = integrate_real(
                |x| eigenfunction(&idx, x).unwrap().powi(2),
                -40.0 / a.abs(),
                80.0 / a.abs(),
                &[0.0],
                Tolerance::default(),
            )
            .unwrap();
            assert_relative_eq!(norm, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn kappa_oracle_values() {
        assert_relative_eq!(quad_expectation_kappa(0, 0.0, 2).unwrap(), 1.5, max_relative = 1e-10);
        assert_relative_eq!(quad_expectation_kappa(0, 0.0, 1).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-10);
        for l in [1.0, 5.0] {
            assert_relative_eq!(quad_expectation_kappa(0, l, 2).unwrap(), l + 1.5, max_relative = 1e-10);
        }
    }

    #[test]
    fn s_oracle_ground_state() {
        let v = quad_expectation_s(0, 0.0, SOperator::Pi2).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-8, "{v}");
        let v = quad_expectation_s(0, 0.0, SOperator::Pi).unwrap();
        assert!((v - Complex64::new(0.0, 1.0 / PI.sqrt())).norm() < 1e-8, "{v}");
    }

    #[test]
    fn quadrature_wigner_symmetry() {
        let idx = QuantumIndices::new(0, 0.0, 1.0).unwrap();
        let a = quad_wigner(&idx, 0.5, 0.4).unwrap();
        let b = quad_wigner(&idx, 0.5, -0.4).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }
}
