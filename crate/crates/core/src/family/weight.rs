use alloc::vec;

use crate::algebra::{Matrix2, MatrixPolynomial};
use crate::error::{Error, Result};

use super::params::ParamSet;

/// Number of interior points scanned when a weight is built.
pub const POSITIVITY_GRID: usize = 1000;

/// `W(t) = t^alpha (1-t)^beta (W2 t² + W1 t + W0)` on `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSpec {
    pub alpha: f64,
    pub beta: f64,
    /// The `v` the matrices were built from; needed by the closed-form determinant.
    pub v: f64,
    pub w0: Matrix2,
    pub w1: Matrix2,
    pub w2: Matrix2,
}

impl WeightSpec {
    /// The matrices of the family weight, without any positivity check.
    pub fn from_params_unchecked(p: &ParamSet) -> Self {
        let (a, b, v) = (p.alpha(), p.beta(), p.v());
        let s = a + b + 2.0;
        let w2 = Matrix2::diag(v * (v + s) / (v + a - b), v * (s - v) / (v - a + b));
        let w1 = Matrix2::new(-(v + s), s, s, -(s - v));
        let w0 = Matrix2::new(1.0, -1.0, -1.0, 1.0).scale(a + 1.0);
        WeightSpec { alpha: a, beta: b, v, w0, w1, w2 }
    }

    /// `W2 t² + W1 t + W0`.
    pub fn polynomial_part(&self) -> MatrixPolynomial {
        MatrixPolynomial::from_coeffs(vec![self.w0, self.w1, self.w2])
    }

    #[inline]
    pub fn polynomial_at(&self, t: f64) -> Matrix2 {
        (self.w2.scale(t) + self.w1).scale(t) + self.w0
    }

    /// `t^alpha (1-t)^beta`.
    #[inline]
    pub fn scalar_factor(&self, t: f64) -> f64 {
        libm::pow(t, self.alpha) * libm::pow(1.0 - t, self.beta)
    }

    /// `W(t)` for `0 < t < 1`.
    pub fn eval(&self, t: f64) -> Result<Matrix2> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::DomainError { value: t, domain: "(0, 1)" });
        }
        Ok(self.polynomial_at(t).scale(self.scalar_factor(t)))
    }

    /// The constant `v² (s - v)(s + v) / ((v + a - b)(v - a + b))` with `s = a + b + 2`.
    pub fn det_constant(&self) -> f64 {
        let (a, b, v) = (self.alpha, self.beta, self.v);
        let s = a + b + 2.0;
        v * v * (s - v) * (s + v) / ((v + a - b) * (v - a + b))
    }

    /// Closed-form `det W(t) = t^{2(a+1)} (1-t)^{2(b+1)} * det_constant`.
    pub fn det(&self, t: f64) -> f64 {
        libm::pow(t, 2.0 * (self.alpha + 1.0))
            * libm::pow(1.0 - t, 2.0 * (self.beta + 1.0))
            * self.det_constant()
    }

    /// Minimum over the real line of the `(1,1)` entry of the polynomial part,
    /// `(s - v)(v - (a - b)) / (4v)`.
    pub fn min_entry11(&self) -> f64 {
        let (a, b, v) = (self.alpha, self.beta, self.v);
        0.25 * (a + b + 2.0 - v) * (v - (a - b)) / v
    }

    /// Scans an interior grid and fails on the first point where the
    /// polynomial part is not positive definite.
    pub fn check_positive(&self, points: usize) -> Result<()> {
        if !(self.w0.is_finite() && self.w1.is_finite() && self.w2.is_finite()) {
            return Err(Error::NonFinite { what: "weight coefficients" });
        }
        for i in 1..=points {
            let t = i as f64 / (points + 1) as f64;
            let m = self.polynomial_at(t);
            if !(m.get(0, 0) > 0.0 && m.det() > 0.0) {
                return Err(Error::WeightNotPositive { t });
            }
        }
        Ok(())
    }
}

/// Builds `W_{alpha,beta,v}` and verifies positivity on a grid.
///
/// The result does not depend on `v2`.
pub fn build_weight(params: &ParamSet) -> Result<WeightSpec> {
    let w = WeightSpec::from_params_unchecked(params);
    w.check_positive(POSITIVITY_GRID)?;
    Ok(w)
}

pub fn weight_eval(w: &WeightSpec, t: f64) -> Result<Matrix2> {
    w.eval(t)
}

pub fn weight_det(w: &WeightSpec, t: f64) -> f64 {
    w.det(t)
}
