use gamma_fourier::numbers::{bernoulli_number, laguerre_diagonal, monomial_sum, BernoulliVariant};
use gamma_fourier::oracle::{quad_transform, QuadratureSpec};
use gamma_fourier::partitions::{enumerate_partitions, faa_weight, partition_count};
use gamma_fourier::physics::{expectation_pi2, uncertainty, wigner, QuantumIndices};
use gamma_fourier::transform::{
    eval_equal_params, eval_transform, eval_transform_negative_lambda, TransformParams,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn f(alpha: f64, beta: f64, m: u32, lambda: f64) -> Complex64 {
    eval_transform(&TransformParams::new(alpha, beta, m, lambda).unwrap()).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotated_value_is_real(alpha in 0.05f64..6.0, beta in 0.05f64..6.0, m in 0u32..12, lambda in -30.0f64..30.0) {
        let v = f(alpha, beta, m, lambda) * Complex64::i().powu(m);
        prop_assert!(v.im.abs() <= 1e-12 * v.norm(), "{v}");
    }

    #[test]
    fn swap_reflection(alpha in 0.1f64..4.0, beta in 0.1f64..4.0, m in 0u32..10, lambda in -8.0f64..8.0) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let e = rel(f(alpha, beta, m, lambda), f(beta, alpha, m, -lambda) * sign);
        prop_assert!(e <= 1e-10, "{e}");
    }

    #[test]
    fn contiguous_recurrences(alpha in 0.2f64..3.0, beta in 0.2f64..3.0, m in 0u32..8, lambda in -4.0f64..4.0) {
        let base = f(alpha, beta, m, lambda);
        let next = f(alpha, beta, m + 1, lambda);
        let ea = rel(f(alpha + 1.0, beta, m, lambda), base * alpha - Complex64::i() * next);
        let eb = rel(f(alpha, beta + 1.0, m, lambda), base * beta + Complex64::i() * next);
        prop_assert!(ea <= 1e-9 && eb <= 1e-9, "{ea} {eb}");
    }

    #[test]
    fn negative_lambda_forms_agree(alpha in 0.2f64..3.0, beta in 0.2f64..3.0, m in 0u32..8, lambda in -4.0f64..-0.01) {
        let p = TransformParams::new(alpha, beta, m, lambda).unwrap();
        let e = rel(eval_transform(&p).unwrap(), eval_transform_negative_lambda(&p).unwrap());
        prop_assert!(e <= 1e-10, "{e}");
    }

    #[test]
    fn equal_parameter_form(beta in 0.1f64..4.0, m in 0u32..10, lambda in -6.0f64..6.0) {
        let e = rel(eval_equal_params(beta, m, lambda).unwrap(), f(beta, beta, m, lambda));
        prop_assert!(e <= 1e-12, "{e}");
    }

    #[test]
    fn odd_moments_vanish_on_the_diagonal(beta in 0.05f64..5.0, k in 0u32..12) {
        let v = f(beta, beta, 2 * k + 1, 0.0);
        prop_assert!(v.norm() <= 1e-12, "{v}");
    }

    #[test]
    fn monomials_are_reproduced(num in -40i64..40, den in 1i64..30, m in 0u32..12) {
        let beta = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assert_eq!(monomial_sum(m, &beta).unwrap(), num_traits::pow(beta, m as usize));
    }

    #[test]
    fn diagonal_laguerre_matches_float(num in -20i64..20, den in 1i64..9, m in 0u32..10) {
        let beta = BigRational::new(BigInt::from(num), BigInt::from(den));
        let exact = laguerre_diagonal(m, &beta).unwrap();
        let x = num as f64 / den as f64;
        let float = gamma_fourier::specfun::laguerre(m, -(m as f64), x);
        let e: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        prop_assert!((e - float).abs() <= 1e-10 * e.abs().max(1e-300) + 1e-300, "{e} vs {float}");
    }

    #[test]
    fn wigner_even_in_momentum(n in 0u32..3, l in 0.0f64..3.0, a in 0.5f64..2.5, x in -1.0f64..2.0, p in -2.0f64..2.0) {
        let idx = QuantumIndices::new(n, l, a).unwrap();
        let w1 = wigner(&idx, x, p).unwrap();
        let w2 = wigner(&idx, x, -p).unwrap();
        prop_assert!((w1 - w2).abs() <= 1e-10 * w1.abs().max(1e-12), "{w1} {w2}");
    }

    #[test]
    fn ground_state_momentum_square(l in -0.49f64..40.0) {
        prop_assert!((expectation_pi2(0, l).unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn uncertainty_above_half(n in 0u32..4, l in 0.0f64..50.0) {
        let u = uncertainty(n, l).unwrap();
        prop_assert!(u.product() > 0.5 * (1.0 - 1e-12), "{}", u.product());
    }
}

#[test]
fn partition_constraints_up_to_twenty() {
    for m in 0..=20u32 {
        let parts = enumerate_partitions(m).unwrap();
        assert_eq!(parts.len() as u64, partition_count(m).unwrap());
        for p in &parts {
            let mult = p.multiplicities();
            let weighted: u32 = mult.iter().enumerate().map(|(i, k)| (i as u32 + 1) * k).sum();
            assert_eq!(weighted, m);
            assert_eq!(mult.iter().sum::<u32>(), p.parts());
            assert!(faa_weight(p) > BigRational::from_integer(0.into()));
        }
    }
}

#[test]
fn bernoulli_variants_are_consistent() {
    for m in 1..=24u32 {
        assert_eq!(
            bernoulli_number(m, BernoulliVariant::Shifted).unwrap(),
            bernoulli_number(m + 1, BernoulliVariant::Direct).unwrap()
        );
    }
}

#[test]
fn tightening_quadrature_is_self_consistent() {
    for &(alpha, beta, m, lambda) in &[(0.3, 0.5, 2, 0.7), (1.7, 2.5, 5, -2.0), (1.0, 0.3, 6, 2.0)] {
        let p = TransformParams::new(alpha, beta, m, lambda).unwrap();
        let mut tol = 1e-6;
        let mut prev = quad_transform(&p, &QuadratureSpec { rel_tol: tol, ..Default::default() }).unwrap().value;
        while tol > 1e-12 {
            let spec = QuadratureSpec {
                rel_tol: tol / 2.0,
                ..Default::default()
            };
            let cur = quad_transform(&p, &spec).unwrap().value;
            assert!(rel(cur, prev) <= tol, "tol {tol}: {cur} vs {prev}");
            prev = cur;
            tol /= 2.0;
        }
    }
}

#[test]
fn wigner_scales_with_width() {
    use gamma_fourier::oracle::quad_wigner;
    // κ(x, a) = κ(x / 2 - ln 2, 2a) and W depends on p only through p / a
    let a1 = QuantumIndices::new(1, 0.5, 1.0).unwrap();
    let a2 = QuantumIndices::new(1, 0.5, 2.0).unwrap();
    let (x, p) = (0.4, 0.3);
    let w1 = wigner(&a1, x, p).unwrap();
    let x2 = x / 2.0 - std::f64::consts::LN_2;
    let w2 = wigner(&a2, x2, 2.0 * p).unwrap();
    assert!((w1 - w2).abs() <= 1e-10 * w1.abs(), "{w1} {w2}");
    let q2 = quad_wigner(&a2, x2, 2.0 * p).unwrap();
    assert!((q2 - w2).abs() <= 1e-8 * w2.abs());
}
