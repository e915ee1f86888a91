use alloc::vec::Vec;

use crate::algebra::{Matrix2, Operator};
use crate::error::{Error, Result};
use crate::family::ParamSet;
use crate::linalg::{svd, Dense};
use crate::tolerance::{DEFAULT_RTOL, RANK_RTOL};

/// `(M^{-1} C M, M^{-1} U M, M^{-1} V M)`.
pub fn conjugate(op: &Operator, m: &Matrix2) -> Result<Operator> {
    let inv = m.inverse()?;
    Ok(Operator::new(inv * op.c * *m, inv * op.u * *m, inv * op.v * *m))
}

/// Entries `(i, j)` of `M` allowed by `X M = M Y` for diagonal `X`, `Y`:
/// `M_ij` can be non-zero only where `X_ii = Y_jj`.
fn diagonal_support(x: &Matrix2, y: &Matrix2, tol: f64) -> Option<[[bool; 2]; 2]> {
    if !(x.is_diagonal() && y.is_diagonal()) {
        return None;
    }
    let scale = x.max_abs().max(y.max_abs()).max(1.0);
    let mut mask = [[false; 2]; 2];
    for (i, row) in mask.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (x.get(i, i) - y.get(j, j)).abs() <= tol * scale;
        }
    }
    Some(mask)
}

/// A nonsingular `M` with `op1 M = M op2`, i.e. `conjugate(op1, M) = op2`.
///
/// `V` is intertwined first: for diagonal `V`s this fixes which entries of
/// `M` may be non-zero. `U` restricts that pattern in the same way. The
/// remaining unknowns are then solved from `C1 M = M C2`. The result is
/// scaled so that its largest entry is `1`.
pub fn equivalence_params(op1: &Operator, op2: &Operator) -> Option<Matrix2> {
    let tol = DEFAULT_RTOL;
    let sv = diagonal_support(&op1.v, &op2.v, tol)?;
    let su = diagonal_support(&op1.u, &op2.u, tol)?;
    let free: Vec<(usize, usize)> = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .filter(|&(i, j)| sv[i][j] && su[i][j])
        .collect();
    if free.is_empty() {
        return None;
    }

    // rows of (C1 M - M C2)_{ij} over the free entries of M
    let (c1, c2) = (op1.c, op2.c);
    let mut sys = Dense::zeros(0, free.len());
    for i in 0..2 {
        for j in 0..2 {
            let row: Vec<f64> = free
                .iter()
                .map(|&(r, s)| {
                    let mut coef = 0.0;
                    if s == j {
                        coef += c1.get(i, r);
                    }
                    if r == i {
                        coef -= c2.get(s, j);
                    }
                    coef
                })
                .collect();
            sys.push_row(&row);
        }
    }
    let null = svd(&sys).null_space(RANK_RTOL);
    let assemble = |x: &[f64]| {
        let mut m = [0.0; 4];
        for (&(r, s), &val) in free.iter().zip(x) {
            m[2 * r + s] = val;
        }
        Matrix2::from_row_major(m)
    };
    // first try each basis vector, then their sum
    let mut candidates: Vec<Matrix2> = null.iter().map(|x| assemble(x)).collect();
    if null.len() > 1 {
        let sum: Vec<f64> = (0..free.len()).map(|k| null.iter().map(|x| x[k]).sum()).collect();
        candidates.push(assemble(&sum));
    }
    candidates.into_iter().find_map(|m| {
        let big = m.to_row_major().into_iter().fold(0.0_f64, |acc, e| if e.abs() > acc.abs() { e } else { acc });
        if big == 0.0 {
            return None;
        }
        let m = m.scale(1.0 / big);
        let conj = conjugate(op1, &m).ok()?;
        let scale = op2.c.max_abs().max(op2.u.max_abs()).max(op2.v.max_abs()).max(1.0);
        let dev = conj
            .c
            .max_abs_diff(&op2.c)
            .max(conj.u.max_abs_diff(&op2.u))
            .max(conj.v.max_abs_diff(&op2.v));
        (dev <= tol * scale).then_some(m)
    })
}

/// The operator of the four-parameter form: `U = (c11 + c22 + v (c11 - c22) / 2) I`,
/// `V = diag(v, 0)` and `c12 = -(c11 - c22 - 2)(c11 - c22 + 2) / (4 c21)`.
pub fn four_parameter_operator(c11: f64, c22: f64, c21: f64, v: f64) -> Result<Operator> {
    if c21 == 0.0 || v == 0.0 {
        return Err(Error::InvalidArgument("c21 and v must be non-zero"));
    }
    let d = c11 - c22;
    let c12 = -(d - 2.0) * (d + 2.0) / (4.0 * c21);
    Ok(Operator::new(
        Matrix2::new(c11, c12, c21, c22),
        Matrix2::scalar(c11 + c22 + 0.5 * v * d),
        Matrix2::diag(v, 0.0),
    ))
}

/// Reduction of the four-parameter form to the canonical one:
/// the diagonal conjugator `diag((c11 - c22 + 2) / (2 c21), 1)` and the
/// parameters `alpha = (c11 + c22)/2 - 2`, `beta = alpha + v (c11 - c22) / 2`.
///
/// The returned parameters are not window-checked.
pub fn reduce_four_parameter(c11: f64, c22: f64, c21: f64, v: f64) -> Result<(Matrix2, ParamSet)> {
    if c21 == 0.0 || v == 0.0 || c11 - c22 + 2.0 == 0.0 {
        return Err(Error::InvalidArgument("the four-parameter form is diagonalizable here"));
    }
    let m = Matrix2::diag((c11 - c22 + 2.0) / (2.0 * c21), 1.0);
    let alpha = 0.5 * (c11 + c22) - 2.0;
    let beta = alpha + 0.5 * v * (c11 - c22);
    Ok((m, ParamSet::new_unchecked(alpha, beta, v, 0.0)))
}
