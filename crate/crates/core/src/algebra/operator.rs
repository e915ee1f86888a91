use alloc::vec;

use super::matrix::Matrix2;
use super::poly::MatrixPolynomial;

/// The hypergeometric operator `D = t(1-t) d²/dt² + (C - tU) d/dt - V`.
///
/// Coefficients act from the left; eigenvalue matrices act from the right
/// (`D P_n = P_n Λ_n`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator {
    pub c: Matrix2,
    pub u: Matrix2,
    pub v: Matrix2,
}

impl Operator {
    pub fn new(c: Matrix2, u: Matrix2, v: Matrix2) -> Self {
        Operator { c, u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.c.is_finite() && self.u.is_finite() && self.v.is_finite()
    }

    /// `D P`, computed coefficient by coefficient.
    ///
    /// With `P = sum_k P_k t^k` the coefficient of `t^k` in `D P` is
    /// `(k+1)(k + C) P_{k+1} - (k(k-1) + kU + V) P_k`.
    pub fn apply(&self, p: &MatrixPolynomial) -> MatrixPolynomial {
        let coeffs = p.coeffs();
        if coeffs.is_empty() {
            return MatrixPolynomial::zero();
        }
        let len = coeffs.len();
        let mut out = vec![Matrix2::ZERO; len];
        for (k, slot) in out.iter_mut().enumerate() {
            let kf = k as f64;
            let diag = self.u.scale(kf).shift(kf * (kf - 1.0)) + self.v;
            let mut acc = -(diag * coeffs[k]);
            if k + 1 < len {
                acc += self.c.shift(kf).scale(kf + 1.0) * coeffs[k + 1];
            }
            *slot = acc;
        }
        MatrixPolynomial::from_coeffs(out)
    }

    /// `D P` assembled from derivatives, used to cross-check [`Operator::apply`].
    pub fn apply_by_derivatives(&self, p: &MatrixPolynomial) -> MatrixPolynomial {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let second = d2.mul_scalar_poly(&[0.0, 1.0, -1.0]);
        let first = &d1.mul_left(&self.c) - &d1.mul_left(&self.u).mul_scalar_poly(&[0.0, 1.0]);
        let zeroth = p.mul_left(&self.v);
        &(&second + &first) - &zeroth
    }
}
