//! Default thresholds shared by the checks.

/// Relative tolerance for identities that hold exactly in exact arithmetic
/// and are evaluated through a chain of rounding steps.
pub const DEFAULT_RTOL: f64 = 1e-10;

/// Tolerance for polynomial identities checked coefficient by coefficient
/// on the weight (symmetry equations, determinant, skew part).
pub const IDENTITY_RTOL: f64 = 1e-12;

/// Divisor magnitude below which the coefficient recursion aborts.
pub const COLLISION_ABS: f64 = 1e-12;

/// Relative singular value threshold for numerical rank.
pub const RANK_RTOL: f64 = 1e-10;

/// Residual bound for the finite-difference check of the hypergeometric equation.
pub const ODE_RESIDUAL: f64 = 1e-6;

/// Central-difference step for that check.
pub const FD_STEP: f64 = 1e-5;

/// Relative deviation of `a` from `b`, scaled by `max(|b|, floor)`.
#[inline]
pub fn rel_dev(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}
