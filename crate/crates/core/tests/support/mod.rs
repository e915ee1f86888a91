#![allow(dead_code)]

use mvop_core::ParamSet;

pub const EXPONENTS: [f64; 5] = [-0.5, 0.0, 0.5, 1.5, 3.0];
pub const FRACTIONS: [f64; 3] = [0.25, 0.5, 0.75];

/// 150 admissible triples: every `(alpha, beta)` pair, `|v|` at three
/// interior fractions of the window, both signs.
pub fn grid() -> Vec<ParamSet> {
    let mut out = Vec::new();
    for &a in &EXPONENTS {
        for &b in &EXPONENTS {
            let lower = (a - b).abs();
            let width = a + b + 2.0 - lower;
            for &f in &FRACTIONS {
                for sign in [1.0, -1.0] {
                    out.push(ParamSet::canonical(a, b, sign * (lower + f * width)).unwrap());
                }
            }
        }
    }
    out
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
