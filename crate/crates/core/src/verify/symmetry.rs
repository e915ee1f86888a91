use crate::algebra::{Matrix2, MatrixPolynomial, Operator};
use crate::family::{build_operator, ParamSet, WeightSpec};
use crate::tolerance::IDENTITY_RTOL;

/// Sample offset from the endpoints for the boundary limits.
pub const BOUNDARY_OFFSET: f64 = 1e-4;

/// Outcome of the symmetry equations for one weight/operator pair.
///
/// The first two residuals are absolute maxima over the coefficients of the
/// polynomial identities obtained after dividing out `t^alpha (1-t)^beta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryReport {
    /// `2 (t(1-t) W)' = W (C - tU) + (C - tU)^T W`
    pub residual_eq1: f64,
    /// `(W (C - tU) - (C - tU)^T W)' = 2 (V^T W - W V)`
    pub residual_eq2: f64,
    /// `W (C - tU) - (C - tU)^T W = -2v t^{a+1} (1-t)^{b+1} [[0, 1], [-1, 0]]`
    pub residual_skew: f64,
    /// `|t(1-t) W(t)|` at `t = BOUNDARY_OFFSET` and `1 - BOUNDARY_OFFSET`.
    pub boundary_0: f64,
    pub boundary_1: f64,
    pub bound_0: f64,
    pub bound_1: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `t^a (1-t)^b [a (1-t) p - b t p + t(1-t) p']`, the polynomial part of
/// `t(1-t) (t^a (1-t)^b p)'`.
fn weighted_derivative(p: &MatrixPolynomial, a: f64, b: f64) -> MatrixPolynomial {
    let one_minus_t = [1.0, -1.0];
    let t = [0.0, 1.0];
    let t_one_minus_t = [0.0, 1.0, -1.0];
    p.mul_scalar_poly(&one_minus_t).scale(a) - p.mul_scalar_poly(&t).scale(b)
        + p.derivative().mul_scalar_poly(&t_one_minus_t)
}

/// Symmetry equations for an explicit weight and operator of the family shape.
pub fn check_symmetry_with(w: &WeightSpec, op: &Operator, tolerance: f64) -> SymmetryReport {
    let (a, b) = (w.alpha, w.beta);
    let p = w.polynomial_part();
    let f = MatrixPolynomial::from_coeffs(alloc::vec![op.c, -op.u]);
    let pf = p.mul(&f);
    let fp = f.transpose().mul(&p);

    // 2 (t(1-t) W)' / (t^a (1-t)^b) = 2 [(a+1)(1-t) p - (b+1) t p + t(1-t) p']
    let lhs1 = weighted_derivative(&p, a + 1.0, b + 1.0).scale(2.0);
    let rhs1 = &pf + &fp;
    let residual_eq1 = lhs1.max_abs_diff(&rhs1);

    // multiply by t(1-t) / (t^a (1-t)^b)
    let k = &pf - &fp;
    let lhs2 = weighted_derivative(&k, a, b);
    let rhs2 = (p.mul_left(&op.v.transpose()) - p.mul_right(&op.v))
        .mul_scalar_poly(&[0.0, 2.0, -2.0]);
    let residual_eq2 = lhs2.max_abs_diff(&rhs2);

    let skew = MatrixPolynomial::constant(Matrix2::SKEW).mul_scalar_poly(&[0.0, -2.0 * w.v, 2.0 * w.v]);
    let residual_skew = k.max_abs_diff(&skew);

    let scale = w.w0.max_abs() + w.w1.max_abs() + w.w2.max_abs();
    let t0 = BOUNDARY_OFFSET;
    let t1 = 1.0 - BOUNDARY_OFFSET;
    let at = |t: f64| w.polynomial_at(t).scale(w.scalar_factor(t) * t * (1.0 - t)).max_abs();
    let boundary_0 = at(t0);
    let boundary_1 = at(t1);
    let rate = libm::pow(t0, a + 1.0).max(libm::pow(1.0 - t1, b + 1.0));
    let bound = 10.0 * rate * scale;
    // the limits vanish only for exponents above -1
    let decays = a > -1.0 && b > -1.0;

    let pass = residual_eq1 <= tolerance
        && residual_eq2 <= tolerance
        && residual_skew <= tolerance
        && decays
        && boundary_0 <= bound
        && boundary_1 <= bound;
    SymmetryReport {
        residual_eq1,
        residual_eq2,
        residual_skew,
        boundary_0,
        boundary_1,
        bound_0: bound,
        bound_1: bound,
        tolerance,
        pass,
    }
}

/// Symmetry equations and boundary limits for the family member `params`.
pub fn check_symmetry(params: &ParamSet) -> SymmetryReport {
    let w = WeightSpec::from_params_unchecked(params);
    check_symmetry_with(&w, &build_operator(params), IDENTITY_RTOL)
}
