//! Exact-in-`t` algebra for 2x2 matrices and matrix polynomials.

pub mod matrix;
pub mod operator;
pub mod poly;

pub use matrix::Matrix2;
pub use operator::Operator;
pub use poly::MatrixPolynomial;
