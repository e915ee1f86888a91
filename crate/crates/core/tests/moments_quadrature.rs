//! Moments and inner products against an independent tanh-sinh quadrature.

mod support;

use mvop_core::family::{inner_product, moments, WeightSpec};
use mvop_core::{Matrix2, MatrixPolynomial};
use std::f64::consts::PI;
use support::{grid, rel, EXPONENTS};

/// `∫_0^1 t^a (1-t)^b g(t) dt` by the double-exponential rule
/// `t = 1 / (1 + exp(-π sinh s))`, whose endpoint decay absorbs the
/// algebraic singularities.
fn tanh_sinh(a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let h = 1.0 / 128.0;
    let mut sum = 0.0;
    for i in -(6 * 128)..=(6 * 128) {
        let s = i as f64 * h;
        let u = PI * s.sinh();
        // ln t and ln(1-t) without cancellation
        let (lt, l1t) = if u >= 0.0 {
            let e = (-u).exp();
            (-e.ln_1p(), -u - e.ln_1p())
        } else {
            let e = u.exp();
            (u - e.ln_1p(), -e.ln_1p())
        };
        let t = lt.exp();
        let jac = PI * s.cosh() * (lt + l1t).exp();
        let w = ((a * lt) + (b * l1t)).exp() * jac;
        if w.is_finite() {
            sum += w * g(t);
        }
    }
    sum * h
}

#[test]
fn moments_match_quadrature() {
    for &a in &EXPONENTS {
        for &b in &EXPONENTS {
            let mu = moments(a, b, 31);
            for (k, m) in mu.iter().enumerate() {
                let q = tanh_sinh(a + k as f64, b, |_| 1.0);
                assert!(rel(*m, q) <= 1e-9, "a={a} b={b} k={k}: {m} vs {q}");
            }
        }
    }
}

#[test]
fn identity_inner_product_matches_quadrature() {
    for p in grid().into_iter().step_by(7) {
        let one = MatrixPolynomial::constant(Matrix2::IDENTITY);
        let s0 = inner_product(&one, &one, &p);
        let w = WeightSpec::from_params_unchecked(&p);
        for i in 0..2 {
            for j in 0..2 {
                let q = tanh_sinh(p.alpha(), p.beta(), |t| w.polynomial_at(t).get(i, j));
                assert!((s0.get(i, j) - q).abs() <= 1e-9 * s0.max_abs(), "{p:?} ({i},{j})");
            }
        }
    }
}

#[test]
fn polynomial_inner_product_matches_quadrature() {
    let p = grid()[37];
    let a = MatrixPolynomial::from_coeffs(vec![Matrix2::new(1.0, -0.5, 2.0, 0.3), Matrix2::new(0.0, 1.0, -1.0, 2.0)]);
    let b = MatrixPolynomial::from_coeffs(vec![
        Matrix2::new(0.2, 0.1, 0.0, 1.0),
        Matrix2::IDENTITY,
        Matrix2::new(-1.0, 0.5, 0.25, 0.0),
    ]);
    let ip = inner_product(&a, &b, &p);
    let w = WeightSpec::from_params_unchecked(&p);
    for i in 0..2 {
        for j in 0..2 {
            let q = tanh_sinh(p.alpha(), p.beta(), |t| {
                (a.eval(t).transpose() * w.polynomial_at(t) * b.eval(t)).get(i, j)
            });
            assert!((ip.get(i, j) - q).abs() <= 1e-9 * ip.max_abs(), "({i},{j}) {} vs {q}", ip.get(i, j));
        }
    }
}
