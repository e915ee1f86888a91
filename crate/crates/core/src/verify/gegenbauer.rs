//! The spherical-function weight
//! `W_{p,q}(x) = (1 - x²)^{q/2 - 1} [[p x² + q - p, -q x], [-q x, (q - p) x² + p]]`
//! on `[-1, 1]` as a family member under `x = 1 - 2t`.

use crate::algebra::{Matrix2, Operator};
use crate::error::Result;
use crate::family::{build_operator, eigenvalue, ParamSet, WeightSpec};

/// `alpha = beta = q/2 - 1`, `v = 2p - q`, `v2 = q - p`.
pub fn gegenbauer_params(p: f64, q: f64) -> Result<ParamSet> {
    let a = 0.5 * q - 1.0;
    ParamSet::new(a, a, 2.0 * p - q, q - p)
}

/// `W_{p,q}(x)` for `|x| < 1`.
pub fn gegenbauer_weight(p: f64, q: f64, x: f64) -> Matrix2 {
    let f = libm::pow(1.0 - x * x, 0.5 * q - 1.0);
    Matrix2::new(p * x * x + q - p, -q * x, -q * x, (q - p) * x * x + p).scale(f)
}

/// The operator in `x`:
/// `(1 - x²) d² - ((q + 2) x + 2 [[0, 1], [1, 0]]) d - diag(p, q - p)`,
/// rewritten in `t = (1 - x) / 2`, where `d/dx = -(1/2) d/dt` and `1 - x² = 4t(1-t)`.
pub fn gegenbauer_operator_in_t(p: f64, q: f64) -> Operator {
    let b = q + 2.0;
    let a = Matrix2::new(0.0, 2.0, 2.0, 0.0);
    // -(b(1 - 2t) + A)(-1/2) d/dt = ((b/2) I + A/2 - b t) d/dt
    Operator::new(a.scale(0.5).shift(0.5 * b), Matrix2::scalar(b), Matrix2::diag(p, q - p))
}

/// `diag(-n(n+q+1) - p, -n(n+q+1) - q + p)`.
pub fn gegenbauer_eigenvalue(p: f64, q: f64, n: usize) -> Matrix2 {
    let nf = n as f64;
    let base = -nf * (nf + q + 1.0);
    Matrix2::diag(base - p, base - q + p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GegenbauerWeightReport {
    /// Max entry deviation of `W_{p,q}(1-2t)` from `c * 2^{q-1} W(t)`,
    /// relative to `|W_{p,q}(1-2t)|`, with the least-squares `c`.
    pub residual: f64,
    /// Same with `c = 1`.
    pub residual_unfitted: f64,
    /// The fitted scalar `c`.
    pub factor: f64,
    pub points: usize,
}

/// Compares the two weights on `points` interior `t`-points.
pub fn gegenbauer_weight_check(p: f64, q: f64, points: usize) -> Result<GegenbauerWeightReport> {
    Ok(weight_report(p, q, &gegenbauer_params(p, q)?, points))
}

fn weight_report(p: f64, q: f64, params: &ParamSet, points: usize) -> GegenbauerWeightReport {
    let w = WeightSpec::from_params_unchecked(params);
    let k = libm::pow(2.0, q - 1.0);
    let pairs: alloc::vec::Vec<(Matrix2, Matrix2)> = (1..=points)
        .map(|i| {
            let t = i as f64 / (points + 1) as f64;
            let g = gegenbauer_weight(p, q, 1.0 - 2.0 * t);
            let f = w.polynomial_at(t).scale(k * w.scalar_factor(t));
            (g, f)
        })
        .collect();
    // per-point normalization keeps the fit from being dominated by the centre
    let (mut num, mut den) = (0.0, 0.0);
    for (g, f) in &pairs {
        let s = g.max_abs() * g.max_abs();
        for (x, y) in g.to_row_major().iter().zip(f.to_row_major()) {
            num += x * y / s;
            den += y * y / s;
        }
    }
    let factor = if den > 0.0 { num / den } else { 1.0 };
    let dev = |c: f64| {
        pairs
            .iter()
            .map(|(g, f)| g.max_abs_diff(&f.scale(c)) / g.max_abs())
            .fold(0.0_f64, f64::max)
    };
    GegenbauerWeightReport {
        residual: dev(factor),
        residual_unfitted: dev(1.0),
        factor,
        points,
    }
}

/// Largest entry deviation between the rewritten `x`-operator and the
/// family operator of the mapped parameters.
pub fn gegenbauer_operator_check(p: f64, q: f64) -> Result<f64> {
    let fam = build_operator(&gegenbauer_params(p, q)?);
    let geg = gegenbauer_operator_in_t(p, q);
    Ok(fam
        .c
        .max_abs_diff(&geg.c)
        .max(fam.u.max_abs_diff(&geg.u))
        .max(fam.v.max_abs_diff(&geg.v)))
}

/// Largest deviation, relative to `|Λ_n|`, between the two eigenvalue
/// ladders for `n <= n_max`.
pub fn gegenbauer_ladder_check(p: f64, q: f64, n_max: usize) -> Result<f64> {
    let params = gegenbauer_params(p, q)?;
    Ok((0..=n_max)
        .map(|n| {
            let g = gegenbauer_eigenvalue(p, q, n);
            eigenvalue(&params, n).matrix().max_abs_diff(&g) / g.max_abs().max(1.0)
        })
        .fold(0.0, f64::max))
}
