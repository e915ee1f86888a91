//! Matrix hypergeometric operators of size 2 whose polynomial eigenfunctions have a diagonal eigenvalue matrix.
//!
//! For parameters `|alpha - beta| < |v| < alpha + beta + 2` the operator
//!
//! ```text
//! D = t(1-t) d²/dt² + (C - tU) d/dt - V
//! ```
//!
//! is symmetric with respect to the irreducible weight
//! `W(t) = t^alpha (1-t)^beta (W2 t² + W1 t + W0)` on `(0, 1)`, and the monic
//! orthogonal polynomials satisfy `D P_n = P_n diag(lambda_n, mu_n)`.
//!
//! The crate is `no_std` (with `alloc`). Modules:
//!
//! - [`algebra`]: `Matrix2`, `MatrixPolynomial` and the operator action.
//! - [`family`]: parameter window, weight, moments, inner product, operator, eigenvalues.
//! - [`mop`]: monic orthogonal polynomials, recurrence coefficients (two routes), norms.
//! - [`hypergeom`]: the matrix hypergeometric function `2H1`.
//! - [`verify`]: symmetry equations, commutant, conjugation/equivalence, Gegenbauer map.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod family;
pub mod hypergeom;
pub mod linalg;
pub mod mop;
pub mod tolerance;
pub mod verify;

pub use algebra::{Matrix2, MatrixPolynomial, Operator};
pub use error::{Error, Result, WindowSide};
pub use family::{EigenPair, ParamSet, WeightSpec};
