use alloc::vec::Vec;

use crate::algebra::Matrix2;
use crate::family::ParamSet;
use crate::linalg::{svd, Dense};
use crate::mop::recurrence_closed;
use crate::tolerance::RANK_RTOL;

/// Depth used when none is given.
pub const DEFAULT_DEPTH: usize = 5;

/// Joint commutant of a set of 2x2 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutantReport {
    pub dimension: usize,
    /// Orthonormal (in the Frobenius sense) basis of the commutant.
    pub basis: Vec<Matrix2>,
    /// Recurrence depth the constraints were taken from.
    pub n: usize,
}

impl CommutantReport {
    pub fn is_irreducible(&self) -> bool {
        self.dimension == 1
    }
}

/// Rows of `vec(X A - A X) = 0` over `vec(X) = (x11, x12, x21, x22)`.
fn constraint_rows(a: &Matrix2) -> [[f64; 4]; 4] {
    let mut rows = [[0.0; 4]; 4];
    // (XA - AX)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
    for i in 0..2 {
        for j in 0..2 {
            let r = &mut rows[2 * i + j];
            for k in 0..2 {
                r[2 * i + k] += a.get(k, j);
                r[2 * k + j] -= a.get(i, k);
            }
        }
    }
    rows
}

/// Commutant of an arbitrary list of matrices.
///
/// Each matrix is scaled to unit max-entry before stacking; this leaves the
/// null space unchanged and keeps small `A_n` from being drowned out.
pub fn commutant_of(mats: &[Matrix2]) -> (usize, Vec<Matrix2>) {
    let mut sys = Dense::zeros(0, 4);
    for m in mats {
        let s = m.max_abs();
        if s == 0.0 {
            continue;
        }
        for row in constraint_rows(&m.scale(1.0 / s)) {
            sys.push_row(&row);
        }
    }
    if sys.rows == 0 {
        let basis = [Matrix2::E11, Matrix2::new(0.0, 1.0, 0.0, 0.0), Matrix2::new(0.0, 0.0, 1.0, 0.0), Matrix2::E22];
        return (4, basis.to_vec());
    }
    let ns = svd(&sys).null_space(RANK_RTOL);
    let basis: Vec<Matrix2> = ns
        .iter()
        .map(|x| Matrix2::from_row_major([x[0], x[1], x[2], x[3]]))
        .collect();
    (basis.len(), basis)
}

/// Commutant of `{A_n, B_n : n <= depth}` from the closed-form recurrence.
pub fn commutant(params: &ParamSet, depth: usize) -> CommutantReport {
    let mut mats = Vec::with_capacity(2 * depth + 2);
    for n in 0..=depth {
        let r = recurrence_closed(params, n);
        mats.push(r.a);
        mats.push(r.b);
    }
    let (dimension, basis) = commutant_of(&mats);
    CommutantReport { dimension, basis, n: depth }
}
