//! Monic orthogonal polynomials of the family, their three-term recurrence
//! `t P_n = P_{n+1} + P_n B_n + P_{n-1} A_n` and their squared norms.
//!
//! The polynomials come from a downward coefficient recursion driven by the
//! operator; the recurrence coefficients are available both from those
//! coefficients and in closed form, and the two are kept independent.

use alloc::vec::Vec;

use crate::algebra::{Matrix2, MatrixPolynomial, Operator};
use crate::error::{Error, Result};
use crate::family::{build_operator, eigenvalue, inner_product, ParamSet};
use crate::tolerance::COLLISION_ABS;

/// Default maximum degree for batch APIs.
pub const DEFAULT_MAX_DEGREE: usize = 50;

/// `(A_n, B_n)` of the three-term recurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrencePair {
    pub n: usize,
    pub a: Matrix2,
    pub b: Matrix2,
}

impl RecurrencePair {
    /// Largest relative entry deviation from `other`, scaled per matrix.
    pub fn rel_diff(&self, other: &RecurrencePair) -> f64 {
        let da = self.a.max_abs_diff(&other.a) / other.a.max_abs().max(f64::MIN_POSITIVE);
        let db = self.b.max_abs_diff(&other.b) / other.b.max_abs().max(f64::MIN_POSITIVE);
        da.max(db)
    }
}

/// `Λ_k = -k(k-1) - kU - V` for an operator with diagonal `U`, `V`.
fn ladder(op: &Operator, k: usize) -> Matrix2 {
    let kf = k as f64;
    -(op.u.scale(kf).shift(kf * (kf - 1.0)) + op.v)
}

/// The matrices `[D, a]_k`, `k = 0..=n`, defined by `[D, a]_n = I` and
/// `[D, a]_k = (a - Λ_k)^{-1} (k+1)(k + C) [D, a]_{k+1}`.
///
/// `U` and `V` must be diagonal so that `a - Λ_k` is.
pub fn coefficient_brackets(op: &Operator, a: f64, n: usize) -> Result<Vec<Matrix2>> {
    if !(op.u.is_diagonal() && op.v.is_diagonal()) {
        return Err(Error::InvalidArgument("operator U and V must be diagonal"));
    }
    let mut out = alloc::vec![Matrix2::ZERO; n + 1];
    out[n] = Matrix2::IDENTITY;
    for k in (0..n).rev() {
        let d = ladder(op, k).scale(-1.0).shift(a);
        let (d1, d2) = (d.get(0, 0), d.get(1, 1));
        for div in [d1, d2] {
            if !(div.abs() >= COLLISION_ABS) {
                return Err(Error::EigenvalueCollision { n, k, divisor: div });
            }
        }
        let inv = Matrix2::diag(1.0 / d1, 1.0 / d2);
        let kf = k as f64;
        out[k] = inv * op.c.shift(kf).scale(kf + 1.0) * out[k + 1];
    }
    Ok(out)
}

/// The degree-`n` monic eigenpolynomial of an operator with diagonal `U`, `V`:
/// `P_n^k = [D, lambda_n]_k E11 + [D, mu_n]_k E22`.
pub fn monic_from_operator(op: &Operator, n: usize) -> Result<MatrixPolynomial> {
    let lam = ladder(op, n);
    let first = coefficient_brackets(op, lam.get(0, 0), n)?;
    let second = coefficient_brackets(op, lam.get(1, 1), n)?;
    let coeffs = first
        .iter()
        .zip(&second)
        .map(|(x, y)| *x * Matrix2::E11 + *y * Matrix2::E22)
        .collect();
    Ok(MatrixPolynomial::from_coeffs(coeffs))
}

/// The monic orthogonal polynomial `P_n` of `W_{alpha,beta,v}`.
pub fn monic_poly(params: &ParamSet, n: usize) -> Result<MatrixPolynomial> {
    monic_from_operator(&build_operator(params), n)
}

/// `P_0, ..., P_{n_max}`.
pub fn monic_sequence(params: &ParamSet, n_max: usize) -> Result<Vec<MatrixPolynomial>> {
    let op = build_operator(params);
    (0..=n_max).map(|n| monic_from_operator(&op, n)).collect()
}

/// `(P_n^{n-1}, P_n^{n-2})` from their explicit expressions in terms of the
/// entries of `C` and the eigenvalues. The second entry is `None` for `n = 1`.
pub fn subleading_coeffs(params: &ParamSet, n: usize) -> Result<(Matrix2, Option<Matrix2>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("subleading coefficients need n >= 1"));
    }
    let c = build_operator(params).c;
    let (c11, c12, c21, c22) = (c.get(0, 0), c.get(0, 1), c.get(1, 0), c.get(1, 1));
    let e = |k: usize| eigenvalue(params, k);
    let (ln, mn) = (e(n).lambda, e(n).mu);
    let (l1, m1) = (e(n - 1).lambda, e(n - 1).mu);
    let nf = n as f64;

    let first = Matrix2::new(
        (c11 + nf - 1.0) / (ln - l1),
        c12 / (mn - l1),
        c21 / (ln - m1),
        (c22 + nf - 1.0) / (mn - m1),
    )
    .scale(nf);
    if n == 1 {
        return Ok((first, None));
    }

    let (l2, m2) = (e(n - 2).lambda, e(n - 2).mu);
    let x11 = (c11 + nf - 2.0) * (c11 + nf - 1.0) / ((l2 - ln) * (l1 - ln))
        + c12 * c21 / ((l2 - ln) * (m1 - ln));
    let x12 = c12 * (c11 + nf - 2.0) / ((l2 - mn) * (l1 - mn))
        + c12 * (c22 + nf - 1.0) / ((l2 - mn) * (m1 - mn));
    let x21 = c21 * (c11 + nf - 1.0) / ((m2 - ln) * (l1 - ln))
        + c21 * (c22 + nf - 2.0) / ((m2 - ln) * (m1 - ln));
    let x22 = (c22 + nf - 2.0) * (c22 + nf - 1.0) / ((m2 - mn) * (m1 - mn))
        + c12 * c21 / ((m2 - mn) * (l1 - mn));
    let second = Matrix2::new(x11, x12, x21, x22).scale(nf * (nf - 1.0));
    Ok((first, Some(second)))
}

/// `B_n = P_n^{n-1} - P_{n+1}^n` and
/// `A_n = P_n^{n-2} - P_{n+1}^{n-1} - P_n^{n-1} B_n` (with `A_0 = I`).
pub fn recurrence_from_polys(n: usize, pn: &MatrixPolynomial, pn1: &MatrixPolynomial) -> RecurrencePair {
    let sub1 = if n >= 1 { pn.coeff(n - 1) } else { Matrix2::ZERO };
    let sub2 = if n >= 2 { pn.coeff(n - 2) } else { Matrix2::ZERO };
    let b = sub1 - pn1.coeff(n);
    let a = if n == 0 {
        Matrix2::IDENTITY
    } else {
        sub2 - pn1.coeff(n - 1) - sub1 * b
    };
    RecurrencePair { n, a, b }
}

/// Recurrence coefficients read off the coefficients of `P_n` and `P_{n+1}`.
pub fn recurrence_from_poly(params: &ParamSet, n: usize) -> Result<RecurrencePair> {
    let op = build_operator(params);
    let pn = monic_from_operator(&op, n)?;
    let pn1 = monic_from_operator(&op, n + 1)?;
    Ok(recurrence_from_polys(n, &pn, &pn1))
}

/// Closed-form `A_n`, `B_n`. Independent of `v2`.
pub fn recurrence_closed(params: &ParamSet, n: usize) -> RecurrencePair {
    let (a, b, v) = (params.alpha(), params.beta(), params.v());
    let nf = n as f64;
    let s = a + b + 2.0 * nf;

    let am = if n == 0 {
        Matrix2::IDENTITY
    } else {
        let pre = nf * (a + nf + 1.0) * (b + nf + 1.0) * (a + b + nf + 2.0)
            / ((s + v + 2.0) * (s + 3.0) * (s + 2.0) * (s + 2.0) * (s - v + 2.0) * (s + 1.0));
        Matrix2::diag((v + s) * (s - v + 4.0), (s - v) * (s + v + 4.0)).scale(pre)
    };

    let b11 = -nf * ((a + nf + 1.0) * v + b - a) / ((s + 2.0) * v)
        + (nf + 1.0) * ((a + nf + 2.0) * v + b - a) / ((s + 4.0) * v);
    let b12 = (v + a - b) * (a + b - v + 2.0) / (v * (s - v + 2.0) * (s - v + 4.0));
    let b21 = (v - a + b) * (a + b + v + 2.0) / (v * (s + v + 2.0) * (s + v + 4.0));
    let b22 = -nf * ((a + nf + 1.0) * v - b + a) / ((s + 2.0) * v)
        + (nf + 1.0) * ((a + nf + 2.0) * v - b + a) / ((s + 4.0) * v);

    RecurrencePair {
        n,
        a: am,
        b: Matrix2::new(b11, b12, b21, b22),
    }
}

/// Squared norms `S_n = <P_n, P_n>`, entry `n` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSequence {
    pub s: Vec<Matrix2>,
}

impl NormSequence {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Matrix2> {
        self.s.get(n)
    }

    /// Relative deviation of the multiplicative `S_n` from `<P_n, P_n>`.
    pub fn spot_check(&self, params: &ParamSet, n: usize) -> Result<f64> {
        let sn = *self
            .s
            .get(n)
            .ok_or(Error::InvalidArgument("degree beyond the norm sequence"))?;
        let pn = monic_poly(params, n)?;
        let direct = inner_product(&pn, &pn, params);
        Ok(direct.max_abs_diff(&sn) / sn.max_abs())
    }
}

/// `S_0 = <I, I>` and `S_{n+1} = S_n A_{n+1}` with the closed-form `A_n`.
///
/// Fails with `NormNotPositive` on the first non-positive diagonal entry.
pub fn norms(params: &ParamSet, n_max: usize) -> Result<NormSequence> {
    let one = MatrixPolynomial::constant(Matrix2::IDENTITY);
    let mut s = Vec::with_capacity(n_max + 1);
    let mut cur = inner_product(&one, &one, params);
    for n in 0..=n_max {
        if n > 0 {
            cur = cur * recurrence_closed(params, n).a;
        }
        for entry in 0..2 {
            let value = cur.get(entry, entry);
            if !(value > 0.0) {
                return Err(Error::NormNotPositive { n, entry: entry + 1, value });
            }
        }
        s.push(cur);
    }
    Ok(NormSequence { s })
}

/// `‖S B - (S B)^T‖ / ‖S B‖`.
pub fn hermitian_defect(s: &Matrix2, b: &Matrix2) -> f64 {
    let sb = *s * *b;
    sb.max_abs_diff(&sb.transpose()) / sb.max_abs().max(f64::MIN_POSITIVE)
}
