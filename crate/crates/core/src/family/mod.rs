//! The three-parameter family: admissible parameters, the weight, its
//! moments and inner product, the canonical operator and its eigenvalues.

pub mod moments;
pub mod params;
pub mod weight;

pub use moments::{inner_product, inner_product_with, moment, moments};
pub use params::{validate_params, ParamSet, Window};
pub use weight::{build_weight, weight_det, weight_eval, WeightSpec, POSITIVITY_GRID};

use crate::algebra::{Matrix2, Operator};

/// Diagonal eigenvalue of `D` on `P_n`: `D P_n = P_n diag(lambda, mu)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenPair {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
}

impl EigenPair {
    pub fn matrix(&self) -> Matrix2 {
        Matrix2::diag(self.lambda, self.mu)
    }
}

/// The canonical operator `D_{alpha,beta,v,v2}`.
pub fn build_operator(params: &ParamSet) -> Operator {
    let (a, b, v) = (params.alpha(), params.beta(), params.v());
    let r = (a - b) / v;
    let c = Matrix2::new(
        a + 2.0 - r,
        (v + a - b) / v,
        (v - a + b) / v,
        a + 2.0 + r,
    );
    let u = Matrix2::scalar(a + b + 4.0);
    let vm = Matrix2::diag(v, 0.0).shift(params.v2());
    Operator::new(c, u, vm)
}

/// `lambda_n = -n(n-1) - n(alpha+beta+4) - v - v2`, `mu_n = lambda_n + v`.
pub fn eigenvalue(params: &ParamSet, n: usize) -> EigenPair {
    let nf = n as f64;
    let base = -nf * (nf - 1.0) - nf * (params.alpha() + params.beta() + 4.0) - params.v2();
    // `+ 0.0` folds a negative zero into zero
    EigenPair {
        n,
        lambda: base - params.v() + 0.0,
        mu: base + 0.0,
    }
}

/// Smallest gap among all eigenvalues up to degree `n_max`:
/// `|lambda_j - mu_k|` for all `j, k` and `|lambda_j - lambda_k|`, `|mu_j - mu_k|` for `j != k`.
pub fn eigenvalue_margin(params: &ParamSet, n_max: usize) -> f64 {
    let pairs: alloc::vec::Vec<EigenPair> = (0..=n_max).map(|n| eigenvalue(params, n)).collect();
    let mut gap = f64::INFINITY;
    for (j, pj) in pairs.iter().enumerate() {
        for (k, pk) in pairs.iter().enumerate() {
            gap = gap.min((pj.lambda - pk.mu).abs());
            if j != k {
                gap = gap.min((pj.lambda - pk.lambda).abs());
                gap = gap.min((pj.mu - pk.mu).abs());
            }
        }
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_operator() {
        let op = build_operator(&ParamSet::canonical(0.0, 0.0, 1.0).unwrap());
        assert_eq!(op.c, Matrix2::new(2.0, 1.0, 1.0, 2.0));
        assert_eq!(op.u, Matrix2::scalar(4.0));
        assert_eq!(op.v, Matrix2::diag(1.0, 0.0));
    }

    #[test]
    fn c_eigenvalues_are_alpha_plus_one_and_three() {
        for &(a, b, v) in &[(0.0, 0.0, 1.0), (0.5, 0.5, -1.0), (1.5, -0.5, 2.1), (-0.5, 0.3, -1.0)] {
            let op = build_operator(&ParamSet::canonical(a, b, v).unwrap());
            let (lo, hi) = op.c.real_eigenvalues().unwrap();
            assert!((lo - (a + 1.0)).abs() < 1e-12, "{lo} vs {}", a + 1.0);
            assert!((hi - (a + 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn gegenbauer_operator() {
        let op = build_operator(&ParamSet::new(0.5, 0.5, -1.0, 2.0).unwrap());
        assert_eq!(op.c, Matrix2::new(2.5, 1.0, 1.0, 2.5));
        assert_eq!(op.u, Matrix2::scalar(5.0));
        assert_eq!(op.v, Matrix2::diag(1.0, 2.0));
    }

    #[test]
    fn eigenvalues_of_worked_example() {
        let p = ParamSet::canonical(0.0, 0.0, 1.0).unwrap();
        let e0 = eigenvalue(&p, 0);
        assert_eq!((e0.lambda, e0.mu), (-1.0, 0.0));
        assert!(e0.mu.is_sign_positive());
        let e1 = eigenvalue(&p, 1);
        assert_eq!((e1.lambda, e1.mu), (-5.0, -4.0));
        let e2 = eigenvalue(&p, 2);
        assert_eq!((e2.lambda, e2.mu), (-11.0, -10.0));
    }

    #[test]
    fn degree_zero_is_minus_v() {
        let p = ParamSet::new(0.2, 1.3, -1.4, 0.75).unwrap();
        let op = build_operator(&p);
        assert_eq!(eigenvalue(&p, 0).matrix(), -op.v);
    }

    #[test]
    fn eigenvalue_matches_operator_leading_term() {
        // Λ_n = -n(n-1) - nU - V
        let p = ParamSet::new(1.2, 0.4, 1.5, -0.3).unwrap();
        let op = build_operator(&p);
        for n in 0..30 {
            let nf = n as f64;
            let expected = -(op.u.scale(nf).shift(nf * (nf - 1.0)) + op.v);
            assert!(eigenvalue(&p, n).matrix().max_abs_diff(&expected) < 1e-12);
        }
    }
}
