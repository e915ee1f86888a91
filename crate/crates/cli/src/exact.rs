//! Rational-arithmetic references for quantities whose f64 evaluation in the
//! monomial basis is ill-conditioned.
//!
//! Every f64 input is an exact binary rational, so the weight matrices, the
//! moment ratios `mu_k / mu_0`, the monic polynomials and their Gram matrices
//! are computed here without rounding. Only the scalar `mu_0 = B(alpha+1, beta+1)`
//! and `t^alpha (1-t)^beta` stay in floating point.

use mvop_core::family::{moments, weight_det, weight_eval, WeightSpec};
use mvop_core::verify::{CheckResult, Location};
use mvop_core::{Matrix2, ParamSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Row-major 2x2 rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat(pub [[Q; 2]; 2]);

impl QMat {
    pub fn zero() -> Self {
        QMat([[Q::zero(), Q::zero()], [Q::zero(), Q::zero()]])
    }

    pub fn identity() -> Self {
        QMat([[Q::one(), Q::zero()], [Q::zero(), Q::one()]])
    }

    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        QMat([[a, b], [c, d]])
    }

    pub fn scale(&self, k: &Q) -> Self {
        let m = &self.0;
        QMat::new(&m[0][0] * k, &m[0][1] * k, &m[1][0] * k, &m[1][1] * k)
    }

    pub fn add(&self, o: &QMat) -> Self {
        let (a, b) = (&self.0, &o.0);
        QMat::new(&a[0][0] + &b[0][0], &a[0][1] + &b[0][1], &a[1][0] + &b[1][0], &a[1][1] + &b[1][1])
    }

    pub fn mul(&self, o: &QMat) -> Self {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        QMat::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        QMat::new(m[0][0].clone(), m[1][0].clone(), m[0][1].clone(), m[1][1].clone())
    }

    pub fn det(&self) -> Q {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2::new(to_f64(&m[0][0]), to_f64(&m[0][1]), to_f64(&m[1][0]), to_f64(&m[1][1]))
    }

    /// Largest entry magnitude, as f64.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| to_f64(&x.abs())).fold(0.0, f64::max)
    }
}

/// The exact rational value of a finite double.
pub fn rat(x: f64) -> Q {
    Q::from_float(x).expect("finite input")
}

pub fn int(k: i64) -> Q {
    Q::from_integer(BigInt::from(k))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `W0`, `W1`, `W2` of the family weight.
pub fn weight_coeffs(alpha: f64, beta: f64, v: f64) -> [QMat; 3] {
    let (a, b, v) = (rat(alpha), rat(beta), rat(v));
    let s = &a + &b + int(2);
    let w2 = QMat::new(
        &v * (&v + &s) / (&v + &a - &b),
        Q::zero(),
        Q::zero(),
        &v * (&s - &v) / (&v - &a + &b),
    );
    let w1 = QMat::new(-(&v + &s), s.clone(), s.clone(), -(&s - &v));
    let a1 = &a + Q::one();
    let w0 = QMat::new(a1.clone(), -a1.clone(), -a1.clone(), a1);
    [w0, w1, w2]
}

/// The coefficients of `det(W2 t² + W1 t + W0)` in ascending powers of `t`.
pub fn det_polynomial(w: &[QMat; 3]) -> [Q; 5] {
    let e = |k: usize, i: usize, j: usize| &w[k].0[i][j];
    let mut out: [Q; 5] = Default::default();
    for p in 0..3 {
        for q in 0..3 {
            out[p + q] += e(p, 0, 0) * e(q, 1, 1) - e(p, 0, 1) * e(q, 1, 0);
        }
    }
    out
}

/// `K t²(1-t)²` with `K = v²(s - v)(s + v) / ((v + a - b)(v - a + b))`, in ascending powers.
pub fn det_closed_polynomial(alpha: f64, beta: f64, v: f64) -> [Q; 5] {
    let (a, b, v) = (rat(alpha), rat(beta), rat(v));
    let s = &a + &b + int(2);
    let k = &v * &v * (&s - &v) * (&s + &v) / ((&v + &a - &b) * (&v - &a + &b));
    [Q::zero(), Q::zero(), k.clone(), &k * int(-2), k]
}

/// `C`, `u` (the scalar of `U`) and the diagonal of `V` of the canonical operator.
fn operator(p: &ParamSet) -> (QMat, Q, [Q; 2]) {
    let (a, b, v, v2) = (rat(p.alpha()), rat(p.beta()), rat(p.v()), rat(p.v2()));
    let d = (&a - &b) / &v;
    let a2 = &a + int(2);
    let c = QMat::new(&a2 - &d, (&v + &a - &b) / &v, (&v - &a + &b) / &v, &a2 + &d);
    let u = &a + &b + int(4);
    (c, u, [&v + &v2, v2])
}

/// Column eigenvalues `(lambda_n, mu_n)`.
fn eigen(p: &ParamSet, n: usize) -> [Q; 2] {
    let (_, u, vd) = operator(p);
    let nq = int(n as i64);
    let base = -(&nq * (&nq - Q::one())) - &nq * &u;
    [&base - &vd[0], &base - &vd[1]]
}

/// Monic `P_n` from `D P_n = P_n diag(lambda_n, mu_n)` solved downward from the
/// leading coefficient, column by column. `None` on an eigenvalue collision.
pub fn monic_poly(p: &ParamSet, n: usize) -> Option<Vec<QMat>> {
    let (c, u, vd) = operator(p);
    let target = eigen(p, n);
    let mut cols: [Vec<[Q; 2]>; 2] = [Vec::new(), Vec::new()];
    for (j, col) in cols.iter_mut().enumerate() {
        let a = &target[j];
        let mut x: [Q; 2] = [Q::zero(), Q::zero()];
        x[j] = Q::one();
        let mut rev = vec![x.clone()];
        for k in (0..n).rev() {
            // (k(k-1) + k u + V + a) x_k = (k+1)(C + k) x_{k+1}
            let kq = int(k as i64);
            let kk = int(k as i64 + 1);
            let cx = [
                (&c.0[0][0] + &kq) * &x[0] + &c.0[0][1] * &x[1],
                &c.0[1][0] * &x[0] + (&c.0[1][1] + &kq) * &x[1],
            ];
            let diag = &kq * (&kq - Q::one()) + &kq * &u + a;
            let mut next: [Q; 2] = [Q::zero(), Q::zero()];
            for e in 0..2 {
                let den = &diag + &vd[e];
                if den.is_zero() {
                    return None;
                }
                next[e] = &kk * &cx[e] / den;
            }
            x = next;
            rev.push(x.clone());
        }
        rev.reverse();
        *col = rev;
    }
    Some(
        (0..=n)
            .map(|k| {
                let (x, y) = (&cols[0][k], &cols[1][k]);
                QMat::new(x[0].clone(), y[0].clone(), x[1].clone(), y[1].clone())
            })
            .collect(),
    )
}

/// Exact Gram data of `P_0, ..., P_N`, in units of `mu_0`.
pub struct Gram {
    pub polys: Vec<Vec<QMat>>,
    /// `<P_n, P_n> / mu_0`.
    pub norms: Vec<QMat>,
    /// Largest `|<P_m, P_n>|` over `m < n`, divided by `|<P_n, P_n>|`.
    pub off_diagonal: Vec<f64>,
}

/// `<P, Q> = sum_ij P_i^T M_{i+j} Q_j` with `M_m / mu_0 = W0 r_m + W1 r_{m+1} + W2 r_{m+2}`
/// and `r_m = prod_{k<m} (alpha + k + 1) / (alpha + beta + k + 2)`.
pub fn gram(p: &ParamSet, degree: usize) -> Option<Gram> {
    let w = weight_coeffs(p.alpha(), p.beta(), p.v());
    let (a, b) = (rat(p.alpha()), rat(p.beta()));
    let mut r = vec![Q::one()];
    for k in 0..2 * degree + 2 {
        let kq = int(k as i64);
        let next = &r[k] * (&a + &kq + Q::one()) / (&a + &b + &kq + int(2));
        r.push(next);
    }
    let m: Vec<QMat> = (0..=2 * degree)
        .map(|i| w[0].scale(&r[i]).add(&w[1].scale(&r[i + 1])).add(&w[2].scale(&r[i + 2])))
        .collect();

    let polys: Vec<Vec<QMat>> = (0..=degree).map(|n| monic_poly(p, n)).collect::<Option<_>>()?;
    let mut norms = Vec::with_capacity(degree + 1);
    let mut off_diagonal = Vec::with_capacity(degree + 1);
    for (n, pn) in polys.iter().enumerate() {
        // g_i = sum_j M_{i+j} (P_n)_j, so <P, P_n> = sum_i P_i^T g_i
        let g: Vec<QMat> = (0..=n)
            .map(|i| pn.iter().enumerate().fold(QMat::zero(), |acc, (j, c)| acc.add(&m[i + j].mul(c))))
            .collect();
        let pair = |q: &[QMat]| q.iter().zip(&g).fold(QMat::zero(), |acc, (c, gi)| acc.add(&c.transpose().mul(gi)));
        let s = pair(pn);
        let scale = s.max_abs();
        // g_k = <t^k I, P_n>; when these vanish for k < n every lower P_m is
        // orthogonal to P_n by linearity, so the pairings need not be formed
        let worst = if g[..n].iter().all(QMat::is_zero) {
            0.0
        } else {
            polys[..n].iter().map(|pm| pair(pm).max_abs()).fold(0.0, f64::max)
        };
        off_diagonal.push(if worst == 0.0 { 0.0 } else { worst / scale });
        norms.push(s);
    }
    Some(Gram { polys, norms, off_diagonal })
}

fn at(n: usize, entry: Option<(usize, usize)>, t: Option<f64>) -> Location {
    Location { n: Some(n), entry, t }
}

/// Orthogonality, norms and polynomial coefficients of the library against
/// the rational reference, for `n <= degree`.
///
/// - `orthogonality_exact`: `|<P_m, P_n>| / |S_n|` over `m < n`.
/// - `norms_exact`: the multiplicative `S_n` against `<P_n, P_n>` entrywise, relative to `|S_n|`.
/// - `polynomials_exact`: library `P_n` coefficients against the exact ones, relative to `max(|P_n|, 1)`.
pub fn orthogonality_checks(p: &ParamSet, degree: usize, tolerance: f64) -> Vec<CheckResult> {
    let mut ortho = CheckResult::new("orthogonality_exact", tolerance);
    let mut norm = CheckResult::new("norms_exact", tolerance);
    let mut coef = CheckResult::new("polynomials_exact", tolerance);
    let fail_all = |cs: [CheckResult; 3]| {
        cs.iter().map(|c| CheckResult::fail_with(c.name, c.threshold, Location::default())).collect()
    };
    let Some(g) = gram(p, degree) else {
        return fail_all([ortho, norm, coef]);
    };
    let Ok(lib_norms) = mvop_core::mop::norms(p, degree) else {
        return fail_all([ortho, norm, coef]);
    };
    let mu0 = moments(p.alpha(), p.beta(), 1)[0];
    for n in 0..=degree {
        ortho.observe(g.off_diagonal[n], at(n, None, None));

        let exact = g.norms[n].to_f64().scale(mu0);
        let lib = *lib_norms.get(n).expect("n <= degree");
        let scale = exact.max_abs();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let d = (lib.get(i, j) - exact.get(i, j)).abs() / scale;
            norm.observe(d, at(n, Some((i + 1, j + 1)), None));
        }

        match mvop_core::mop::monic_poly(p, n) {
            Ok(lp) => {
                let ex = &g.polys[n];
                let size = ex.iter().map(QMat::max_abs).fold(1.0, f64::max);
                for (k, c) in ex.iter().enumerate() {
                    let d = lp.coeff(k).max_abs_diff(&c.to_f64()) / size;
                    coef.observe(d, at(n, None, None));
                }
            }
            Err(_) => coef.observe(f64::INFINITY, at(n, None, None)),
        }
    }
    vec![ortho, norm, coef]
}

/// `det W(t)` on `points` interior points against `t^{2a}(1-t)^{2b} det(p(t))`
/// with the polynomial determinant evaluated exactly, plus positivity of
/// `det W` and `W_11`, plus the exact polynomial identity `det p(t) = K t²(1-t)²`.
pub fn determinant_checks(p: &ParamSet, points: usize) -> Vec<CheckResult> {
    let (a, b, v) = (p.alpha(), p.beta(), p.v());
    let spec = WeightSpec::from_params_unchecked(p);
    let wq = weight_coeffs(a, b, v);
    let dp = det_polynomial(&wq);

    let mut poly = CheckResult::new("determinant_polynomial", 0.0);
    let closed = det_closed_polynomial(a, b, v);
    if dp != closed {
        let k = dp.iter().zip(&closed).position(|(x, y)| x != y).unwrap_or(0);
        poly.residual = dp
            .iter()
            .zip(&closed)
            .map(|(x, y)| to_f64(&(x - y).abs()))
            .fold(0.0, f64::max);
        poly.pass = false;
        poly.first_failure = Some(Location { n: Some(k), entry: None, t: None });
    }

    let mut ident = CheckResult::new("determinant_identity", mvop_core::tolerance::IDENTITY_RTOL);
    let mut positive = CheckResult::new("determinant_positive", 0.0);
    for i in 1..=points {
        let t = i as f64 / (points + 1) as f64;
        let tq = rat(t);
        let mut dq = Q::zero();
        let mut pow = Q::one();
        for c in &dp {
            dq += c * &pow;
            pow *= &tq;
        }
        let rho = spec.scalar_factor(t);
        let reference = rho * rho * to_f64(&dq);
        let closed = weight_det(&spec, t);
        ident.observe((closed - reference).abs() / reference.abs(), at(0, None, Some(t)));
        let w11 = weight_eval(&spec, t).map(|m| m.get(0, 0)).unwrap_or(f64::NAN);
        let worst = if closed > 0.0 && w11 > 0.0 { 0.0 } else { 1.0 };
        positive.observe(worst, at(0, None, Some(t)));
    }
    vec![poly, ident, positive]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn worked() -> ParamSet {
        ParamSet::new(0.0, 0.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn rationals_are_exact() {
        assert_eq!(rat(0.5), q(1, 2));
        assert_eq!(rat(-0.25), q(-1, 4));
        assert_eq!(to_f64(&rat(0.1)), 0.1);
    }

    #[test]
    fn worked_example_weight() {
        let [w0, w1, w2] = weight_coeffs(0.0, 0.0, 1.0);
        assert_eq!(w2, QMat::new(int(3), int(0), int(0), int(1)));
        assert_eq!(w1, QMat::new(int(-3), int(2), int(2), int(-1)));
        assert_eq!(w0, QMat::new(int(1), int(-1), int(-1), int(1)));
    }

    #[test]
    fn determinant_polynomial_is_closed_form() {
        for &(a, b, v) in &[(0.0, 0.0, 1.0), (0.5, -0.25, 1.1), (3.0, 1.5, -2.25), (0.5, 0.5, -1.0)] {
            let w = weight_coeffs(a, b, v);
            assert_eq!(det_polynomial(&w), det_closed_polynomial(a, b, v), "({a},{b},{v})");
        }
    }

    #[test]
    fn first_monic_polynomial() {
        let p1 = monic_poly(&worked(), 1).unwrap();
        assert_eq!(p1[1], QMat::identity());
        let lib = mvop_core::mop::monic_poly(&worked(), 1).unwrap();
        assert!(lib.coeff(0).max_abs_diff(&p1[0].to_f64()) < 1e-15);
    }

    #[test]
    fn pinned_norms() {
        let g = gram(&worked(), 1).unwrap();
        // mu_0 = 1 at alpha = beta = 0
        assert_eq!(g.norms[0], QMat::new(q(1, 2), int(0), int(0), q(5, 6)));
        assert_eq!(g.norms[1], QMat::new(q(1, 40), int(0), int(0), q(7, 360)));
    }

    #[test]
    fn exact_orthogonality_is_exact() {
        let p = ParamSet::new(0.5, -0.25, -1.1, 0.3).unwrap();
        let g = gram(&p, 8).unwrap();
        assert!(g.off_diagonal.iter().all(|&x| x == 0.0));
        for s in &g.norms {
            assert!(s.0[0][1].is_zero() && s.0[1][0].is_zero());
            assert!(s.0[0][0].is_positive() && s.0[1][1].is_positive());
        }
    }

    #[test]
    fn a_wrong_polynomial_is_not_orthogonal() {
        let p = worked();
        let g = gram(&p, 2).unwrap();
        let mut bad = g.polys[2].clone();
        bad[0] = bad[0].add(&QMat::new(q(1, 1000), int(0), int(0), int(0)));
        let w = weight_coeffs(0.0, 0.0, 1.0);
        // <I, bad> = M_0 bad_0 + M_1 bad_1 + M_2 bad_2 with r_m = 1/(m+1)
        let r = [q(1, 1), q(1, 2), q(1, 3), q(1, 4), q(1, 5)];
        let m = |i: usize| w[0].scale(&r[i]).add(&w[1].scale(&r[i + 1])).add(&w[2].scale(&r[i + 2]));
        let ip = (0..3).fold(QMat::zero(), |acc, j| acc.add(&m(j).mul(&bad[j])));
        assert!(!ip.is_zero());
    }

    #[test]
    fn library_matches_exact_reference() {
        let p = ParamSet::new(1.5, 0.0, 1.75, 0.0).unwrap();
        for c in orthogonality_checks(&p, 12, 1e-10) {
            assert!(c.pass, "{c:?}");
        }
        for c in determinant_checks(&p, 1000) {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn tampered_spec_fails_determinant() {
        // outside the window the closed form changes sign while det p stays positive somewhere
        let p = ParamSet::new_unchecked(0.0, 0.0, 2.5, 0.0);
        let cs = determinant_checks(&p, 100);
        assert!(cs.iter().any(|c| !c.pass));
    }
}
