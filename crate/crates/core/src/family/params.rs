use crate::error::{Error, Result, WindowSide};

/// An admissible parameter triple `(alpha, beta, v)` plus the eigenvalue shift `v2`.
///
/// Constructed through [`ParamSet::new`], which enforces
/// `|alpha - beta| < |v| < alpha + beta + 2` with strict comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSet {
    alpha: f64,
    beta: f64,
    v: f64,
    v2: f64,
}

/// The three quantities compared by the admissibility window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    /// `|alpha - beta|`
    pub lower: f64,
    /// `|v|`
    pub value: f64,
    /// `alpha + beta + 2`
    pub upper: f64,
}

impl Window {
    pub fn of(alpha: f64, beta: f64, v: f64) -> Self {
        Window {
            lower: (alpha - beta).abs(),
            value: v.abs(),
            upper: alpha + beta + 2.0,
        }
    }

    /// The first failing side, if any.
    pub fn violation(&self) -> Option<WindowSide> {
        if !(self.lower < self.value) {
            Some(WindowSide::Lower)
        } else if !(self.value < self.upper) {
            Some(WindowSide::Upper)
        } else {
            None
        }
    }

    /// Distance of `|v|` to the nearest window edge; positive inside.
    pub fn margin(&self) -> f64 {
        (self.value - self.lower).min(self.upper - self.value)
    }
}

impl ParamSet {
    pub fn new(alpha: f64, beta: f64, v: f64, v2: f64) -> Result<Self> {
        for (x, name) in [(alpha, "alpha"), (beta, "beta"), (v, "v"), (v2, "v2")] {
            if !x.is_finite() {
                return Err(Error::NonFinite { what: name });
            }
        }
        let w = Window::of(alpha, beta, v);
        match w.violation() {
            Some(side) => Err(Error::ParamOutOfWindow {
                side,
                lower: w.lower,
                value: w.value,
                upper: w.upper,
            }),
            None => Ok(ParamSet { alpha, beta, v, v2 }),
        }
    }

    /// Same as `new(alpha, beta, v, 0)`.
    pub fn canonical(alpha: f64, beta: f64, v: f64) -> Result<Self> {
        Self::new(alpha, beta, v, 0.0)
    }

    /// Bypasses the window check.
    ///
    /// Only meant for probing what breaks outside the window; the
    /// constructions downstream make no promises for such values.
    pub fn new_unchecked(alpha: f64, beta: f64, v: f64, v2: f64) -> Self {
        ParamSet { alpha, beta, v, v2 }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }
    #[inline]
    pub fn v(&self) -> f64 {
        self.v
    }
    #[inline]
    pub fn v2(&self) -> f64 {
        self.v2
    }

    /// Copy with a different shift `v2`.
    pub fn with_v2(&self, v2: f64) -> Self {
        ParamSet { v2, ..*self }
    }

    pub fn window(&self) -> Window {
        Window::of(self.alpha, self.beta, self.v)
    }

    pub fn is_admissible(&self) -> bool {
        self.window().violation().is_none()
    }
}

/// Checks the window and returns the validated parameter set.
pub fn validate_params(alpha: f64, beta: f64, v: f64, v2: f64) -> Result<ParamSet> {
    ParamSet::new(alpha, beta, v, v2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_is_valid() {
        let p = validate_params(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(p.window(), Window { lower: 0.0, value: 1.0, upper: 2.0 });
    }

    #[test]
    fn upper_boundary_is_excluded() {
        match validate_params(0.0, 0.0, 2.0, 0.0) {
            Err(Error::ParamOutOfWindow { side, .. }) => assert_eq!(side, WindowSide::Upper),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn lower_boundary_is_excluded() {
        match validate_params(1.0, 0.0, 1.0, 0.0) {
            Err(Error::ParamOutOfWindow { side, .. }) => assert_eq!(side, WindowSide::Lower),
            other => panic!("expected rejection, got {other:?}"),
        }
        assert!(validate_params(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn gegenbauer_member_is_valid() {
        let p = validate_params(0.5, 0.5, -1.0, 2.0).unwrap();
        assert_eq!(p.v2(), 2.0);
    }

    #[test]
    fn shift_is_unconstrained() {
        assert!(validate_params(0.0, 0.0, 0.5, 7.0).is_ok());
        assert!(validate_params(0.0, 0.0, 0.5, -1e6).is_ok());
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(matches!(
            validate_params(f64::NAN, 0.0, 1.0, 0.0),
            Err(Error::NonFinite { what: "alpha" })
        ));
        assert!(validate_params(0.0, 0.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn window_implies_alpha_beta_above_minus_one() {
        for &a in &[-1.5, -1.0, -0.99, 0.0, 2.0] {
            for &b in &[-1.5, -1.0, -0.99, 0.0, 2.0] {
                for &v in &[-3.0, -0.5, 0.01, 0.5, 1.9, 3.5] {
                    if validate_params(a, b, v, 0.0).is_ok() {
                        assert!(a > -1.0 && b > -1.0);
                    }
                }
            }
        }
    }
}
