use alloc::vec::Vec;

use crate::algebra::{Matrix2, MatrixPolynomial};

use super::params::ParamSet;
use super::weight::WeightSpec;

/// `ln B(x, y)` through log-gamma.
pub fn ln_beta(x: f64, y: f64) -> f64 {
    libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y)
}

/// The first `count` moments `mu_k = ∫_0^1 t^{alpha+k} (1-t)^beta dt`.
///
/// `mu_0 = B(alpha+1, beta+1)` and `mu_{k+1} = mu_k (alpha+k+1) / (alpha+beta+k+2)`.
pub fn moments(alpha: f64, beta: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut mu = libm::exp(ln_beta(alpha + 1.0, beta + 1.0));
    out.push(mu);
    for k in 0..count - 1 {
        let kf = k as f64;
        mu *= (alpha + kf + 1.0) / (alpha + beta + kf + 2.0);
        out.push(mu);
    }
    out
}

/// The single moment `mu_k` of the scalar factor `t^alpha (1-t)^beta`.
pub fn moment(params: &ParamSet, k: usize) -> f64 {
    moments(params.alpha(), params.beta(), k + 1)[k]
}

/// `<P, Q>_W = ∫_0^1 P(t)^T W(t) Q(t) dt`, evaluated exactly through moments.
pub fn inner_product(p: &MatrixPolynomial, q: &MatrixPolynomial, params: &ParamSet) -> Matrix2 {
    let w = WeightSpec::from_params_unchecked(params);
    inner_product_with(p, q, &w)
}

/// [`inner_product`] against an explicit weight.
pub fn inner_product_with(p: &MatrixPolynomial, q: &MatrixPolynomial, w: &WeightSpec) -> Matrix2 {
    if p.is_zero() || q.is_zero() {
        return Matrix2::ZERO;
    }
    let pc = p.coeffs();
    let qc = q.coeffs();
    let mu = moments(w.alpha, w.beta, pc.len() + qc.len() + 1);
    // weight coefficient against t^m: sum_j W_j mu_{m+j}
    let wm: Vec<Matrix2> = (0..pc.len() + qc.len() - 1)
        .map(|m| w.w0.scale(mu[m]) + w.w1.scale(mu[m + 1]) + w.w2.scale(mu[m + 2]))
        .collect();
    let mut acc = Matrix2::ZERO;
    for (i, pi) in pc.iter().enumerate() {
        let pit = pi.transpose();
        for (j, qj) in qc.iter().enumerate() {
            acc += pit * wm[i + j] * *qj;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn uniform_moments_are_reciprocals() {
        for (k, mu) in moments(0.0, 0.0, 20).into_iter().enumerate() {
            assert!((mu - 1.0 / (k as f64 + 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_factor_moments() {
        let mu = moments(1.0, 0.0, 2);
        assert!((mu[0] - 0.5).abs() < 1e-15);
        assert!((mu[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn half_half_moment() {
        let p = ParamSet::canonical(0.5, 0.5, 0.5).unwrap();
        assert!((moment(&p, 0) - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn identity_inner_product_worked_example() {
        let p = ParamSet::canonical(0.0, 0.0, 1.0).unwrap();
        let one = MatrixPolynomial::constant(Matrix2::IDENTITY);
        let s0 = inner_product(&one, &one, &p);
        assert!(s0.max_abs_diff(&Matrix2::diag(0.5, 5.0 / 6.0)) < 1e-15, "{s0:?}");
    }

    #[test]
    fn inner_product_is_transpose_symmetric() {
        let p = ParamSet::canonical(0.3, -0.4, -1.0).unwrap();
        let a = MatrixPolynomial::from_coeffs(alloc::vec![
            Matrix2::new(1.0, 2.0, -1.0, 0.5),
            Matrix2::new(0.0, 3.0, 1.0, 1.0),
        ]);
        let b = MatrixPolynomial::from_coeffs(alloc::vec![
            Matrix2::new(0.2, 0.0, 4.0, -1.0),
            Matrix2::new(1.0, 1.0, 1.0, 1.0),
            Matrix2::new(-2.0, 0.5, 0.0, 1.0),
        ]);
        let ab = inner_product(&a, &b, &p);
        let ba = inner_product(&b, &a, &p);
        assert!(ab.max_abs_diff(&ba.transpose()) < 1e-14);
    }
}
