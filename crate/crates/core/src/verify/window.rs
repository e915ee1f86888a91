use alloc::vec::Vec;

use crate::algebra::{Matrix2, MatrixPolynomial};
use crate::family::{inner_product, ParamSet};
use crate::mop::{hermitian_defect, recurrence_closed};
use crate::tolerance::IDENTITY_RTOL;

/// Which structural property broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeCheck {
    NormPositive,
    NormHermitian,
    APositive,
}

impl ProbeCheck {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProbeCheck::NormPositive => "S_n positive",
            ProbeCheck::NormHermitian => "S_n B_n symmetric",
            ProbeCheck::APositive => "A_n positive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeFailure {
    pub check: ProbeCheck,
    pub n: usize,
    pub value: f64,
}

/// Runs the closed forms for arbitrary `(alpha, beta, v)` and records every
/// violation of `S_n > 0`, `S_n B_n = (S_n B_n)^T` and `A_n > 0` for `n <= n_max`.
///
/// Non-finite values count as violations.
pub fn window_probe(alpha: f64, beta: f64, v: f64, n_max: usize) -> Vec<ProbeFailure> {
    let p = ParamSet::new_unchecked(alpha, beta, v, 0.0);
    let one = MatrixPolynomial::constant(Matrix2::IDENTITY);
    let mut s = inner_product(&one, &one, &p);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let r = recurrence_closed(&p, n);
        if n > 0 {
            for e in 0..2 {
                let x = r.a.get(e, e);
                if !(x > 0.0) {
                    out.push(ProbeFailure { check: ProbeCheck::APositive, n, value: x });
                }
            }
            s = s * r.a;
        }
        for e in 0..2 {
            let x = s.get(e, e);
            if !(x > 0.0) {
                out.push(ProbeFailure { check: ProbeCheck::NormPositive, n, value: x });
            }
        }
        let h = hermitian_defect(&s, &r.b);
        if !(h <= IDENTITY_RTOL) {
            out.push(ProbeFailure { check: ProbeCheck::NormHermitian, n, value: h });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_triples_are_clean() {
        for &(a, b, v) in &[(0.0, 0.0, 1.0), (1.0, 0.0, 1.5), (0.5, 0.5, -1.0), (3.0, -0.5, 4.0)] {
            assert!(window_probe(a, b, v, 10).is_empty(), "({a},{b},{v})");
        }
    }

    #[test]
    fn beyond_the_upper_edge() {
        let f = window_probe(0.0, 0.0, 2.5, 10);
        assert!(!f.is_empty());
        assert!(f.iter().any(|x| x.check == ProbeCheck::NormPositive));
    }

    #[test]
    fn below_the_lower_edge() {
        let f = window_probe(1.0, 0.0, 0.5, 10);
        assert!(!f.is_empty(), "{f:?}");
    }
}
