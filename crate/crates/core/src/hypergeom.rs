//! The matrix hypergeometric function
//!
//! ```text
//! 2H1(U, V; C; t) F0 = sum_k t^k / k! [C, U, V]_k F0,
//! [C, U, V]_0 = I,  [C, U, V]_{k+1} = (C + k)^{-1} (k² + k(U - 1) + V) [C, U, V]_k,
//! ```
//!
//! which solves `t(1-t) F'' + (C - tU) F' - V F = 0` near `t = 0`.

use alloc::vec::Vec;

use crate::algebra::{Matrix2, MatrixPolynomial, Operator};
use crate::error::{Error, Result};
use crate::family::{build_operator, eigenvalue, ParamSet};
use crate::mop::monic_from_operator;
use crate::tolerance::FD_STEP;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;

/// Number of consecutive small terms that ends the summation.
pub const SMALL_RUN: usize = 3;

/// `[C, U, V]_{k+1} [C, U, V]_k^{-1}` as a factor: `(C + k)^{-1} (k² + k(U - 1) + V)`.
fn step_factor(c: &Matrix2, u: &Matrix2, v: &Matrix2, k: usize) -> Result<Matrix2> {
    let kf = k as f64;
    let num = u.shift(-1.0).scale(kf).shift(kf * kf) + *v;
    Ok(c.shift(kf).inverse()? * num)
}

/// The symbols `[C, U, V]_n` of one triple, cached as they are computed.
#[derive(Clone, Debug)]
pub struct H21Symbol {
    pub c: Matrix2,
    pub u: Matrix2,
    pub v: Matrix2,
    cache: Vec<Matrix2>,
}

impl H21Symbol {
    pub fn new(c: Matrix2, u: Matrix2, v: Matrix2) -> Self {
        H21Symbol { c, u, v, cache: alloc::vec![Matrix2::IDENTITY] }
    }

    /// `[C, U, V]_n`, extending the cache as needed.
    pub fn symbol(&mut self, n: usize) -> Result<Matrix2> {
        while self.cache.len() <= n {
            let k = self.cache.len() - 1;
            let next = step_factor(&self.c, &self.u, &self.v, k)? * self.cache[k];
            self.cache.push(next);
        }
        Ok(self.cache[n])
    }

    /// Symbols computed so far.
    pub fn cached(&self) -> &[Matrix2] {
        &self.cache
    }
}

/// `[C, U, V]_n` without a cache.
pub fn h21_symbol(c: Matrix2, u: Matrix2, v: Matrix2, n: usize) -> Result<Matrix2> {
    let mut acc = Matrix2::IDENTITY;
    for k in 0..n {
        acc = step_factor(&c, &u, &v, k)? * acc;
    }
    Ok(acc)
}

fn norm2(x: [f64; 2]) -> f64 {
    libm::hypot(x[0], x[1])
}

/// Successive series terms `t^k / k! [C, U, V]_k F0`, `k = 0..count`.
///
/// Terms are generated by the vector recursion, so no factorial or power
/// is formed explicitly.
pub fn series_terms(
    c: Matrix2,
    u: Matrix2,
    v: Matrix2,
    f0: [f64; 2],
    t: f64,
    count: usize,
) -> Result<Vec<[f64; 2]>> {
    let mut out = Vec::with_capacity(count);
    let mut term = f0;
    for k in 0..count {
        out.push(term);
        let f = step_factor(&c, &u, &v, k)?.scale(t / (k as f64 + 1.0));
        term = f.mul_vec(term);
    }
    Ok(out)
}

/// Compensated running sum of 2-vectors.
struct Neumaier {
    sum: [f64; 2],
    comp: [f64; 2],
}

impl Neumaier {
    fn new(x: [f64; 2]) -> Self {
        Neumaier { sum: x, comp: [0.0; 2] }
    }

    fn add(&mut self, x: [f64; 2]) {
        for ((s, c), xi) in self.sum.iter_mut().zip(self.comp.iter_mut()).zip(x) {
            let y = *s + xi;
            *c += if s.abs() >= xi.abs() { (*s - y) + xi } else { (xi - y) + *s };
            *s = y;
        }
    }

    fn value(&self) -> [f64; 2] {
        [self.sum[0] + self.comp[0], self.sum[1] + self.comp[1]]
    }
}

/// Truncated sum of `2H1(U, V; C; t) F0` for `|t| < 1`.
///
/// Summation stops once [`SMALL_RUN`] consecutive terms have norm below
/// `tol` times the norm of the running sum.
pub fn h21_eval(c: Matrix2, u: Matrix2, v: Matrix2, f0: [f64; 2], t: f64, tol: f64) -> Result<[f64; 2]> {
    if !(t.abs() < 1.0) {
        return Err(Error::DomainError { value: t, domain: "|t| < 1" });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let mut sum = Neumaier::new(f0);
    let mut term = f0;
    let mut run = 0;
    for k in 0..MAX_TERMS {
        let f = step_factor(&c, &u, &v, k)?.scale(t / (k as f64 + 1.0));
        term = f.mul_vec(term);
        sum.add(term);
        let total = sum.value();
        if !(total[0].is_finite() && total[1].is_finite()) {
            return Err(Error::NonFinite { what: "hypergeometric partial sum" });
        }
        // a zero sum with a zero term is converged as well
        if norm2(term) <= tol * norm2(total) {
            run += 1;
            if run >= SMALL_RUN {
                return Ok(total);
            }
        } else {
            run = 0;
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

/// `t(1-t) F'' + (C - tU) F' - V F` at `t`, with `F = 2H1(U, V; C; .) F0`
/// differentiated by central differences of step `h`.
///
/// The largest residual component is divided by the largest component of
/// the three terms (floored at 1), so the value does not depend on the
/// scale of `F0` and stays meaningful where `F` grows towards `t = 1`.
pub fn ode_residual(
    c: Matrix2,
    u: Matrix2,
    v: Matrix2,
    f0: [f64; 2],
    t: f64,
    tol: f64,
    h: f64,
) -> Result<f64> {
    let fm = h21_eval(c, u, v, f0, t - h, tol)?;
    let f = h21_eval(c, u, v, f0, t, tol)?;
    let fp = h21_eval(c, u, v, f0, t + h, tol)?;
    let w = t * (1.0 - t);
    let second = [
        w * (fp[0] - 2.0 * f[0] + fm[0]) / (h * h),
        w * (fp[1] - 2.0 * f[1] + fm[1]) / (h * h),
    ];
    let first = (c - u.scale(t)).mul_vec([(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h)]);
    let zero = v.mul_vec(f);
    let mut res: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..2 {
        res = res.max((second[i] + first[i] - zero[i]).abs());
        scale = scale.max(second[i].abs()).max(first[i].abs()).max(zero[i].abs());
    }
    Ok(res / scale)
}

/// [`ode_residual`] with the default step.
pub fn ode_residual_default(c: Matrix2, u: Matrix2, v: Matrix2, f0: [f64; 2], t: f64, tol: f64) -> Result<f64> {
    ode_residual(c, u, v, f0, t, tol, FD_STEP)
}

/// Coefficients `F_k = [C, U, V + a]_k F0 / k!`, `k = 0..count`, of the
/// solution of `D F = a F` through `F0` at `t = 0`.
pub fn eigen_series_coeffs(op: &Operator, a: f64, f0: [f64; 2], count: usize) -> Result<Vec<[f64; 2]>> {
    series_terms(op.c, op.u, op.v.shift(a), f0, 1.0, count)
}

/// `P_n` rebuilt column by column from the symbol recursion, starting from
/// the columns of `P_n(0)`. Columns are truncated at degree `n`.
pub fn monic_from_symbols(params: &ParamSet, n: usize) -> Result<MatrixPolynomial> {
    let op = build_operator(params);
    let p0 = monic_from_operator(&op, n)?.coeff(0);
    let e = eigenvalue(params, n);
    let first = eigen_series_coeffs(&op, e.lambda, p0.column(0), n + 1)?;
    let second = eigen_series_coeffs(&op, e.mu, p0.column(1), n + 1)?;
    let coeffs = first
        .iter()
        .zip(&second)
        .map(|(x, y)| Matrix2::new(x[0], y[0], x[1], y[1]))
        .collect();
    Ok(MatrixPolynomial::from_coeffs(coeffs))
}

/// Largest relative deviation between the symbol route and the coefficient
/// recursion for `P_n`, together with the largest leftover coefficient of the
/// symbol series beyond degree `n` (relative to `|P_n|`).
pub fn linkage_residual(params: &ParamSet, n: usize) -> Result<(f64, f64)> {
    let op = build_operator(params);
    let direct = monic_from_operator(&op, n)?;
    let via = monic_from_symbols(params, n)?;
    let scale = direct.max_abs().max(f64::MIN_POSITIVE);
    let dev = direct.max_abs_diff(&via) / scale;

    let p0 = direct.coeff(0);
    let e = eigenvalue(params, n);
    let mut tail: f64 = 0.0;
    for (a, col) in [(e.lambda, 0), (e.mu, 1)] {
        let coeffs = eigen_series_coeffs(&op, a, p0.column(col), n + 4)?;
        for f in &coeffs[n + 1..] {
            tail = tail.max(f[0].abs()).max(f[1].abs());
        }
    }
    Ok((dev, tail / scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::ODE_RESIDUAL;

    fn family(a: f64, b: f64, v: f64) -> Operator {
        build_operator(&ParamSet::canonical(a, b, v).unwrap())
    }

    #[test]
    fn symbol_base_case() {
        let op = family(0.3, 0.1, 0.9);
        assert_eq!(h21_symbol(op.c, op.u, op.v, 0).unwrap(), Matrix2::IDENTITY);
    }

    #[test]
    fn first_symbol_of_worked_example() {
        let op = family(0.0, 0.0, 1.0);
        let s1 = h21_symbol(op.c, op.u, op.v, 1).unwrap();
        let expected = Matrix2::new(2.0, 0.0, -1.0, 0.0).scale(1.0 / 3.0);
        assert!(s1.max_abs_diff(&expected) < 1e-15, "{s1:?}");
    }

    #[test]
    fn zero_v_kills_every_later_symbol() {
        let op = family(0.5, 1.0, -1.2);
        for n in 1..6 {
            assert_eq!(h21_symbol(op.c, op.u, Matrix2::ZERO, n).unwrap(), Matrix2::ZERO);
        }
        for t in [-0.9, -0.3, 0.2, 0.95] {
            let f = h21_eval(op.c, op.u, Matrix2::ZERO, [1.5, -2.0], t, 1e-14).unwrap();
            assert_eq!(f, [1.5, -2.0]);
        }
    }

    #[test]
    fn value_at_origin_is_initial_vector() {
        let op = family(0.0, 0.0, 1.0);
        let f = h21_eval(op.c, op.u, op.v, [0.7, -0.2], 0.0, 1e-14).unwrap();
        assert_eq!(f, [0.7, -0.2]);
    }

    #[test]
    fn cache_agrees_with_direct_symbols() {
        let op = family(1.5, -0.5, 2.1);
        let mut s = H21Symbol::new(op.c, op.u, op.v);
        let s7 = s.symbol(7).unwrap();
        assert_eq!(s.cached().len(), 8);
        for n in 0..=7 {
            let d = h21_symbol(op.c, op.u, op.v, n).unwrap();
            assert!(s.cached()[n].max_abs_diff(&d) <= 1e-15 * d.max_abs().max(1.0));
        }
        assert_eq!(s.symbol(7).unwrap(), s7);
    }

    #[test]
    fn singular_shift_is_reported() {
        // C = -2 I makes C + 2 singular
        let c = Matrix2::scalar(-2.0);
        let err = h21_symbol(c, Matrix2::IDENTITY, Matrix2::IDENTITY, 4).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix { .. }));
    }

    #[test]
    fn domain_and_tolerance_are_checked() {
        let op = family(0.0, 0.0, 1.0);
        for t in [1.0, -1.0, 2.0, f64::NAN] {
            assert!(matches!(
                h21_eval(op.c, op.u, op.v, [1.0, 0.0], t, 1e-12),
                Err(Error::DomainError { .. })
            ));
        }
        assert!(h21_eval(op.c, op.u, op.v, [1.0, 0.0], 0.5, 0.0).is_err());
    }

    #[test]
    fn scalar_case_matches_gauss_series() {
        // C = c I, U = (a+b+1) I, V = ab I reduces to 2F1(a, b; c; t)
        let (a, b, c) = (0.5, 1.0, 1.5);
        let f = h21_eval(
            Matrix2::scalar(c),
            Matrix2::scalar(a + b + 1.0),
            Matrix2::scalar(a * b),
            [1.0, 2.0],
            0.25,
            1e-16,
        )
        .unwrap();
        // 2F1(1/2, 1; 3/2; x²) = atanh(x) / x
        let exact = libm::atanh(0.5) / 0.5;
        assert!((f[0] - exact).abs() < 1e-14);
        assert!((f[1] - 2.0 * exact).abs() < 1e-14);
    }

    #[test]
    fn slow_series_hits_the_cap() {
        // 2F1(1, 1; 1; t) = 1 / (1 - t): term ratio t, run ends only below tol
        let err = h21_eval(
            Matrix2::IDENTITY,
            Matrix2::scalar(3.0),
            Matrix2::IDENTITY,
            [1.0, 0.0],
            0.999_999,
            1e-300,
        )
        .unwrap_err();
        assert_eq!(err, Error::NoConvergence { terms: MAX_TERMS });
    }

    #[test]
    fn ode_residual_of_family_triples() {
        for &(a, b, v) in &[(0.0, 0.0, 1.0), (0.5, -0.25, 1.1), (1.5, 0.5, -2.0), (-0.5, -0.25, 0.5)] {
            let op = family(a, b, v);
            for i in 1..=9 {
                let t = i as f64 / 10.0;
                for f0 in [[1.0, 0.0], [0.0, 1.0], [0.6, -0.8]] {
                    let r = ode_residual_default(op.c, op.u, op.v, f0, t, 1e-17).unwrap();
                    assert!(r <= ODE_RESIDUAL, "({a},{b},{v}) t={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn terms_decay_geometrically() {
        let op = family(0.5, 0.5, -1.0);
        let terms = series_terms(op.c, op.u, op.v, [1.0, 1.0], 0.9, 200).unwrap();
        let n: Vec<f64> = terms.iter().map(|x| norm2(*x)).collect();
        // tail ratios approach |t|
        let r = n[199] / n[198];
        assert!(r < 0.95 && r > 0.85, "{r}");
        assert!(n[199] < n[100]);
    }

    #[test]
    fn polynomial_linkage() {
        for &(a, b, v) in &[(0.0, 0.0, 1.0), (1.0, 0.0, 1.5), (0.5, -0.25, -1.1), (3.0, 1.5, 4.0)] {
            let p = ParamSet::canonical(a, b, v).unwrap();
            for n in 0..=10 {
                let (dev, tail) = linkage_residual(&p, n).unwrap();
                assert!(dev <= 1e-10, "({a},{b},{v}) n={n}: {dev}");
                assert!(tail <= 1e-10, "({a},{b},{v}) n={n}: tail {tail}");
            }
        }
    }
}
