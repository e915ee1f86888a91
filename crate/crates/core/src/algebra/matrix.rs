use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Relative singularity threshold for 2x2 inversion.
///
/// A matrix is treated as singular when `|det| <= SINGULAR_RTOL * max(1, max|a_ij|^2)`.
pub const SINGULAR_RTOL: f64 = 1e-13;

/// A real 2x2 matrix stored row-major.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Matrix2 {
    pub m: [[f64; 2]; 2],
}

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2 { m: [[0.0, 0.0], [0.0, 0.0]] };
    pub const IDENTITY: Matrix2 = Matrix2 { m: [[1.0, 0.0], [0.0, 1.0]] };
    /// The idempotent projecting onto the first coordinate.
    pub const E11: Matrix2 = Matrix2 { m: [[1.0, 0.0], [0.0, 0.0]] };
    /// The idempotent projecting onto the second coordinate.
    pub const E22: Matrix2 = Matrix2 { m: [[0.0, 0.0], [0.0, 1.0]] };
    /// The rotation generator `[[0, 1], [-1, 0]]`.
    pub const SKEW: Matrix2 = Matrix2 { m: [[0.0, 1.0], [-1.0, 0.0]] };

    #[inline]
    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Matrix2 { m: [[m11, m12], [m21, m22]] }
    }

    #[inline]
    pub const fn diag(d1: f64, d2: f64) -> Self {
        Matrix2::new(d1, 0.0, 0.0, d2)
    }

    #[inline]
    pub const fn scalar(s: f64) -> Self {
        Matrix2::diag(s, s)
    }

    /// Builds a matrix from its row-major entries.
    #[inline]
    pub const fn from_row_major(e: [f64; 4]) -> Self {
        Matrix2::new(e[0], e[1], e[2], e[3])
    }

    #[inline]
    pub const fn to_row_major(&self) -> [f64; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    #[inline]
    pub fn transpose(&self) -> Self {
        Matrix2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        Matrix2::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    /// `self + s * I`.
    #[inline]
    pub fn shift(&self, s: f64) -> Self {
        Matrix2::new(self.m[0][0] + s, self.m[0][1], self.m[1][0], self.m[1][1] + s)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.to_row_major().iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.to_row_major().iter().all(|x| x.is_finite())
    }

    pub fn is_diagonal(&self) -> bool {
        self.m[0][1] == 0.0 && self.m[1][0] == 0.0
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.max_abs().max(1.0);
        if !det.is_finite() || det.abs() <= SINGULAR_RTOL * scale * scale {
            return Err(Error::SingularMatrix { det });
        }
        let inv = 1.0 / det;
        Ok(Matrix2::new(
            self.m[1][1] * inv,
            -self.m[0][1] * inv,
            -self.m[1][0] * inv,
            self.m[0][0] * inv,
        ))
    }

    #[inline]
    pub fn mul_vec(&self, x: [f64; 2]) -> [f64; 2] {
        [
            self.m[0][0] * x[0] + self.m[0][1] * x[1],
            self.m[1][0] * x[0] + self.m[1][1] * x[1],
        ]
    }

    #[inline]
    pub fn column(&self, col: usize) -> [f64; 2] {
        [self.m[0][col], self.m[1][col]]
    }

    /// Commutator `self * other - other * self`.
    #[inline]
    pub fn commutator(&self, other: &Matrix2) -> Self {
        *self * *other - *other * *self
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Eigenvalues of a matrix with real spectrum, in ascending order.
    ///
    /// Returns `None` when the discriminant is negative beyond rounding.
    pub fn real_eigenvalues(&self) -> Option<(f64, f64)> {
        let half_tr = 0.5 * self.trace();
        let disc = half_tr * half_tr - self.det();
        let floor = 1e-14 * (half_tr * half_tr).max(self.det().abs()).max(1.0);
        if disc < -floor {
            return None;
        }
        let r = libm::sqrt(disc.max(0.0));
        Some((half_tr - r, half_tr + r))
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    #[inline]
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    #[inline]
    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    #[inline]
    fn neg(self) -> Matrix2 {
        self.scale(-1.0)
    }
}

impl AddAssign for Matrix2 {
    #[inline]
    fn add_assign(&mut self, o: Matrix2) {
        *self = *self + o;
    }
}

impl SubAssign for Matrix2 {
    #[inline]
    fn sub_assign(&mut self, o: Matrix2) {
        *self = *self - o;
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    #[inline]
    fn mul(self, o: Matrix2) -> Matrix2 {
        let a = &self.m;
        let b = &o.m;
        Matrix2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for Matrix2 {
    type Output = Matrix2;
    #[inline]
    fn mul(self, s: f64) -> Matrix2 {
        self.scale(s)
    }
}

impl Mul<Matrix2> for f64 {
    type Output = Matrix2;
    #[inline]
    fn mul(self, m: Matrix2) -> Matrix2 {
        m.scale(self)
    }
}
