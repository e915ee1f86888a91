//! Named checks grouped into suites. Every check reports a residual, the
//! threshold it was held to and, on failure, where it first failed.

use alloc::vec::Vec;

use crate::algebra::{Matrix2, MatrixPolynomial};
use crate::error::Result;
use crate::family::{build_operator, eigenvalue, inner_product, ParamSet, WeightSpec, POSITIVITY_GRID};
use crate::hypergeom::{linkage_residual, ode_residual_default};
use crate::mop::{hermitian_defect, monic_from_operator, norms, recurrence_closed, recurrence_from_polys};
use crate::tolerance::{IDENTITY_RTOL, ODE_RESIDUAL};

use super::commutant::{commutant, DEFAULT_DEPTH};
use super::gegenbauer::{gegenbauer_ladder_check, gegenbauer_operator_check, gegenbauer_params, gegenbauer_weight_check};
use super::symmetry::check_symmetry;

/// Highest degree at which the double-precision moment inner product still
/// resolves `S_n` to the default tolerance for every exponent up to 3; beyond
/// it the monomial-basis cancellation loses one to two digits per degree.
pub const F64_INNER_PRODUCT_DEGREE: usize = 2;

/// Highest degree for the hypergeometric linkage.
pub const LINKAGE_DEGREE: usize = 10;

/// Sample points for the differential-equation residual.
pub const ODE_SAMPLES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Where a check first failed.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Location {
    pub n: Option<usize>,
    /// 1-based `(row, column)`.
    pub entry: Option<(usize, usize)>,
    pub t: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst value seen.
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub first_failure: Option<Location>,
}

impl CheckResult {
    pub fn new(name: &'static str, threshold: f64) -> Self {
        CheckResult { name, residual: 0.0, threshold, pass: true, first_failure: None }
    }

    /// Folds in one observation. NaN fails.
    pub fn observe(&mut self, value: f64, at: Location) {
        if value > self.residual || value.is_nan() {
            self.residual = value;
        }
        if !(value <= self.threshold) {
            self.pass = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(at);
            }
        }
    }

    /// A failed check with infinite residual.
    pub fn fail_with(name: &'static str, threshold: f64, at: Location) -> Self {
        CheckResult { name, residual: f64::INFINITY, threshold, pass: false, first_failure: Some(at) }
    }
}

fn at_n(n: usize) -> Location {
    Location { n: Some(n), ..Location::default() }
}

/// Entry `(i, j)` (1-based) of the largest element of `m`.
fn worst_entry(m: &Matrix2) -> (usize, usize) {
    let mut best = (1, 1);
    let mut big = -1.0;
    for i in 0..2 {
        for j in 0..2 {
            if m.get(i, j).abs() > big {
                big = m.get(i, j).abs();
                best = (i + 1, j + 1);
            }
        }
    }
    best
}

fn at_entry(n: usize, m: &Matrix2) -> Location {
    Location { n: Some(n), entry: Some(worst_entry(m)), t: None }
}

fn poly_diff_location(n: usize, a: &MatrixPolynomial, b: &MatrixPolynomial) -> Location {
    let len = a.coeffs().len().max(b.coeffs().len());
    let worst = (0..len)
        .map(|k| a.coeff(k) - b.coeff(k))
        .fold(Matrix2::ZERO, |acc, d| if d.max_abs() > acc.max_abs() { d } else { acc });
    at_entry(n, &worst)
}

/// Symmetry equations, boundary limits and positivity of the weight.
pub fn symmetry_suite(params: &ParamSet) -> Vec<CheckResult> {
    let r = check_symmetry(params);
    let mut out = Vec::new();
    for (name, value, threshold) in [
        ("symmetry_eq1", r.residual_eq1, r.tolerance),
        ("symmetry_eq2", r.residual_eq2, r.tolerance),
        ("skew_closed_form", r.residual_skew, r.tolerance),
        ("boundary_0", r.boundary_0, r.bound_0),
        ("boundary_1", r.boundary_1, r.bound_1),
    ] {
        let mut c = CheckResult::new(name, threshold);
        c.observe(value, Location::default());
        out.push(c);
    }

    let w = WeightSpec::from_params_unchecked(params);
    let mut pos = CheckResult::new("weight_positive", 0.0);
    for i in 1..=POSITIVITY_GRID {
        let t = i as f64 / (POSITIVITY_GRID + 1) as f64;
        let m = w.polynomial_at(t);
        // count of non-positive quantities at this point
        let bad = [m.get(0, 0), m.det(), w.det(t)].iter().filter(|x| !(**x > 0.0)).count();
        pos.observe(bad as f64, Location { t: Some(t), ..Location::default() });
    }
    out.push(pos);
    out
}

/// Eigenfunction identity, two-route recurrence agreement and the
/// structural properties of `A_n`, `S_n`, `S_n B_n` for `n <= degree`.
pub fn recurrence_suite(params: &ParamSet, degree: usize, tolerance: f64) -> Vec<CheckResult> {
    let op = build_operator(params);
    let mut eig = CheckResult::new("eigenfunction", tolerance);
    let mut two = CheckResult::new("recurrence_two_routes", tolerance);
    let mut apos = CheckResult::new("a_positive", 0.0);
    let polys: Result<Vec<MatrixPolynomial>> = (0..=degree + 1).map(|n| monic_from_operator(&op, n)).collect();
    let polys = match polys {
        Ok(p) => p,
        Err(_) => {
            return alloc::vec![
                CheckResult::fail_with("eigenfunction", tolerance, Location::default()),
                CheckResult::fail_with("recurrence_two_routes", tolerance, Location::default()),
            ]
        }
    };
    for n in 0..=degree {
        let p = &polys[n];
        let lhs = op.apply(p);
        let rhs = p.mul_right(&eigenvalue(params, n).matrix());
        eig.observe(lhs.max_abs_diff(&rhs) / p.max_abs(), poly_diff_location(n, &lhs, &rhs));

        let from = recurrence_from_polys(n, p, &polys[n + 1]);
        let closed = recurrence_closed(params, n);
        let da = (from.a - closed.a, closed.a.max_abs());
        let db = (from.b - closed.b, closed.b.max_abs());
        let (worst, scale) = if da.0.max_abs() / da.1 >= db.0.max_abs() / db.1 { da } else { db };
        two.observe(worst.max_abs() / scale, at_entry(n, &worst));

        if n > 0 {
            let lo = closed.a.get(0, 0).min(closed.a.get(1, 1));
            apos.observe(if lo > 0.0 { 0.0 } else { 1.0 }, at_n(n));
        }
    }
    let mut out = alloc::vec![eig, two, apos];
    out.extend(norm_checks(params, degree));
    out
}

/// `S_n` positive diagonal and `S_n B_n` symmetric.
fn norm_checks(params: &ParamSet, degree: usize) -> Vec<CheckResult> {
    let mut pos = CheckResult::new("norms_positive", 0.0);
    let mut herm = CheckResult::new("norm_b_symmetric", IDENTITY_RTOL);
    match norms(params, degree) {
        Ok(s) => {
            for (n, sn) in s.s.iter().enumerate() {
                pos.observe(0.0, at_n(n));
                let b = recurrence_closed(params, n).b;
                herm.observe(hermitian_defect(sn, &b), Location { n: Some(n), entry: Some((1, 2)), t: None });
            }
        }
        Err(crate::Error::NormNotPositive { n, entry, .. }) => {
            pos = CheckResult::fail_with("norms_positive", 0.0, Location { n: Some(n), entry: Some((entry, entry)), t: None });
        }
        Err(_) => pos = CheckResult::fail_with("norms_positive", 0.0, Location::default()),
    }
    alloc::vec![pos, herm]
}

/// Orthogonality of `P_m`, `P_n` and `<P_n, P_n> = S_n` through the
/// double-precision moment inner product, for degrees up to
/// `min(degree, F64_INNER_PRODUCT_DEGREE)`; plus the structural norm checks.
pub fn orthogonality_suite(params: &ParamSet, degree: usize, tolerance: f64) -> Vec<CheckResult> {
    let mut out = norm_checks(params, degree);
    let top = degree.min(F64_INNER_PRODUCT_DEGREE);
    let mut off = CheckResult::new("orthogonality_f64", tolerance);
    let mut diag = CheckResult::new("norms_f64", tolerance);
    let (polys, s) = match (crate::mop::monic_sequence(params, top), norms(params, top)) {
        (Ok(p), Ok(s)) => (p, s),
        _ => {
            out.push(CheckResult::fail_with("orthogonality_f64", tolerance, Location::default()));
            return out;
        }
    };
    for n in 0..=top {
        let sn = s.s[n];
        for m in 0..n {
            let ip = inner_product(&polys[m], &polys[n], params);
            off.observe(ip.max_abs() / sn.max_abs(), at_entry(n, &ip));
        }
        let ip = inner_product(&polys[n], &polys[n], params);
        let d = ip - sn;
        diag.observe(d.max_abs() / sn.max_abs(), at_entry(n, &d));
    }
    out.push(off);
    out.push(diag);
    out
}

/// Symbol-series reconstruction of `P_n` and the differential-equation
/// residual of the evaluated series.
pub fn hypergeom_suite(params: &ParamSet, degree: usize, tolerance: f64) -> Vec<CheckResult> {
    let mut link = CheckResult::new("hypergeom_linkage", tolerance);
    let mut tail = CheckResult::new("hypergeom_truncation", tolerance);
    for n in 0..=degree.min(LINKAGE_DEGREE) {
        match linkage_residual(params, n) {
            Ok((d, t)) => {
                link.observe(d, at_n(n));
                tail.observe(t, at_n(n));
            }
            Err(_) => link.observe(f64::INFINITY, at_n(n)),
        }
    }
    let op = build_operator(params);
    let mut ode = CheckResult::new("hypergeom_ode", ODE_RESIDUAL);
    for &t in &ODE_SAMPLES {
        for f0 in [[1.0, 0.0], [0.0, 1.0]] {
            let r = ode_residual_default(op.c, op.u, op.v, f0, t, 1e-17).unwrap_or(f64::INFINITY);
            ode.observe(r, Location { t: Some(t), ..Location::default() });
        }
    }
    alloc::vec![link, tail, ode]
}

/// Commutant of the recurrence coefficients at the default depth.
pub fn irreducibility_suite(params: &ParamSet) -> Vec<CheckResult> {
    let r = commutant(params, DEFAULT_DEPTH);
    let mut c = CheckResult::new("commutant_dimension", 1.0);
    c.observe(r.dimension as f64, at_n(DEFAULT_DEPTH));
    alloc::vec![c]
}

/// Parameter map, eigenvalue ladders, operator coefficients and weight
/// identity for the spherical-function weight `(p, q)`.
pub fn gegenbauer_suite(p: f64, q: f64, tolerance: f64) -> Vec<CheckResult> {
    let mut window = CheckResult::new("gegenbauer_window", 0.0);
    if gegenbauer_params(p, q).is_err() {
        window.observe(1.0, Location::default());
        return alloc::vec![window];
    }
    window.observe(0.0, Location::default());
    let mut ladder = CheckResult::new("gegenbauer_ladder", IDENTITY_RTOL);
    ladder.observe(gegenbauer_ladder_check(p, q, 20).unwrap_or(f64::INFINITY), Location::default());
    let mut oper = CheckResult::new("gegenbauer_operator", IDENTITY_RTOL);
    oper.observe(gegenbauer_operator_check(p, q).unwrap_or(f64::INFINITY), Location::default());
    let mut weight = CheckResult::new("gegenbauer_weight", tolerance);
    let mut raw = CheckResult::new("gegenbauer_weight_unfitted", tolerance);
    match gegenbauer_weight_check(p, q, POSITIVITY_GRID) {
        Ok(r) => {
            weight.observe(r.residual, Location::default());
            raw.observe(r.residual_unfitted, Location::default());
        }
        Err(_) => weight.observe(f64::INFINITY, Location::default()),
    }
    alloc::vec![window, ladder, oper, weight, raw]
}
