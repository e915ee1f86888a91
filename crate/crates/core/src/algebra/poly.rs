use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use super::matrix::Matrix2;

/// A polynomial in the real variable `t` with 2x2 matrix coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`. Trailing zero coefficients are
/// always stripped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MatrixPolynomial {
    coeffs: Vec<Matrix2>,
}

impl MatrixPolynomial {
    pub fn zero() -> Self {
        MatrixPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(m: Matrix2) -> Self {
        Self::from_coeffs(alloc::vec![m])
    }

    /// `t * I`.
    pub fn t() -> Self {
        Self::from_coeffs(alloc::vec![Matrix2::ZERO, Matrix2::IDENTITY])
    }

    /// `m * t^k`.
    pub fn monomial(m: Matrix2, k: usize) -> Self {
        let mut coeffs = alloc::vec![Matrix2::ZERO; k + 1];
        coeffs[k] = m;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Matrix2>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Matrix2::ZERO) {
            coeffs.pop();
        }
        MatrixPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Matrix2] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Matrix2> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Matrix2 {
        self.coeffs.get(k).copied().unwrap_or(Matrix2::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest absolute coefficient entry.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |acc, c| acc.max(c.max_abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> Matrix2 {
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix2::ZERO, |acc, c| acc.scale(t) + *c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(k as f64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// `self * m`, i.e. every coefficient right-multiplied by `m`.
    pub fn mul_right(&self, m: &Matrix2) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| *c * *m).collect())
    }

    /// `m * self`.
    pub fn mul_left(&self, m: &Matrix2) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| *m * *c).collect())
    }

    /// Product with a scalar polynomial `s(t) = sum_j s[j] t^j`.
    pub fn mul_scalar_poly(&self, s: &[f64]) -> Self {
        if self.is_zero() || s.is_empty() {
            return Self::zero();
        }
        let mut out = alloc::vec![Matrix2::ZERO; self.coeffs.len() + s.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, &sj) in s.iter().enumerate() {
                out[i + j] += c.scale(sj);
            }
        }
        Self::from_coeffs(out)
    }

    /// Product of two matrix polynomials, `self(t) * other(t)`.
    pub fn mul(&self, other: &MatrixPolynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![Matrix2::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(Matrix2::transpose).collect())
    }

    /// Largest absolute coefficient entry of `self - other`.
    pub fn max_abs_diff(&self, other: &MatrixPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).fold(0.0_f64, |acc, k| {
            acc.max(self.coeff(k).max_abs_diff(&other.coeff(k)))
        })
    }

    fn zip_with(&self, other: &MatrixPolynomial, f: impl Fn(Matrix2, Matrix2) -> Matrix2) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }
}

impl Add for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn add(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn sub(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Add for MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn add(self, o: MatrixPolynomial) -> MatrixPolynomial {
        &self + &o
    }
}

impl Sub for MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn sub(self, o: MatrixPolynomial) -> MatrixPolynomial {
        &self - &o
    }
}

impl Neg for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn neg(self) -> MatrixPolynomial {
        self.scale(-1.0)
    }
}
