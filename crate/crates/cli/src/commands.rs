use mvop_core::family::{build_operator, build_weight, eigenvalue, weight_det, weight_eval, Window};
use mvop_core::mop::{monic_sequence, norms, recurrence_closed};
use mvop_core::verify::suite::{
    gegenbauer_suite, hypergeom_suite, irreducibility_suite, orthogonality_suite, recurrence_suite, symmetry_suite,
};
use mvop_core::verify::CheckResult;
use mvop_core::{Error, Matrix2, ParamSet};
use serde_json::{json, Map, Value};

use crate::format::{json_matrix, json_number, json_text, number, Table};
use crate::{exact, EmitKind, Format, Outcome, RunConfig, Suite, EXIT_FAILURE, EXIT_INVALID_PARAMS, EXIT_OK};

/// Interior points of the determinant comparison.
pub const DETERMINANT_POINTS: usize = 1000;

/// Stable machine-readable name of an error.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::SingularMatrix { .. } => "singular_matrix",
        Error::ParamOutOfWindow { .. } => "param_out_of_window",
        Error::NonFinite { .. } => "non_finite",
        Error::DomainError { .. } => "domain_error",
        Error::WeightNotPositive { .. } => "weight_not_positive",
        Error::NormNotPositive { .. } => "norm_not_positive",
        Error::EigenvalueCollision { .. } => "eigenvalue_collision",
        Error::NoConvergence { .. } => "no_convergence",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome::error(EXIT_FAILURE, error_code(e), e.to_string())
}

fn param_failure(e: &Error) -> Outcome {
    Outcome::error(EXIT_INVALID_PARAMS, error_code(e), e.to_string())
}

fn required(value: Option<f64>, flag: &str) -> Result<f64, Outcome> {
    value.ok_or_else(|| Outcome::usage(format!("error: --{flag} is required\n")))
}

fn raw_params(cfg: &RunConfig) -> Result<(f64, f64, f64), Outcome> {
    Ok((required(cfg.alpha, "alpha")?, required(cfg.beta, "beta")?, required(cfg.v, "v")?))
}

fn params(cfg: &RunConfig) -> Result<ParamSet, Outcome> {
    let (a, b, v) = raw_params(cfg)?;
    ParamSet::new(a, b, v, cfg.v2).map_err(|e| param_failure(&e))
}

fn params_json(p: &ParamSet) -> Value {
    json!({
        "alpha": json_number(p.alpha()),
        "beta": json_number(p.beta()),
        "v": json_number(p.v()),
        "v2": json_number(p.v2()),
    })
}

fn render(format: Format, json: Value, table: impl FnOnce() -> Table) -> String {
    match format {
        Format::Json => json_text(&json),
        Format::Csv => table().to_csv(),
        Format::Pretty => table().to_pretty(),
    }
}

fn cells(m: &Matrix2) -> Vec<String> {
    m.to_row_major().iter().map(|&x| number(x)).collect()
}

pub fn validate(cfg: &RunConfig) -> Outcome {
    let (a, b, v) = match raw_params(cfg) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let w = Window::of(a, b, v);
    let (valid, violated) = match ParamSet::new(a, b, v, cfg.v2) {
        Ok(_) => (true, None),
        Err(Error::ParamOutOfWindow { side, .. }) => (false, Some(side)),
        Err(e) => return param_failure(&e),
    };
    let mut obj = Map::new();
    obj.insert("valid".into(), Value::Bool(valid));
    obj.insert(
        "window".into(),
        json!({ "lower": json_number(w.lower), "value": json_number(w.value), "upper": json_number(w.upper) }),
    );
    if let Some(side) = violated {
        obj.insert("violated".into(), Value::String(side.as_str().into()));
        let text = match side {
            mvop_core::WindowSide::Lower => "|alpha - beta| < |v|",
            mvop_core::WindowSide::Upper => "|v| < alpha + beta + 2",
        };
        obj.insert("inequality".into(), Value::String(text.into()));
    }
    let stdout = render(cfg.format, Value::Object(obj), || {
        let mut t = Table::new(&["valid", "lower", "value", "upper", "violated"]);
        t.push(vec![
            valid.to_string(),
            number(w.lower),
            number(w.value),
            number(w.upper),
            violated.map_or("", |s| s.as_str()).to_string(),
        ]);
        t
    });
    Outcome { code: if valid { EXIT_OK } else { EXIT_INVALID_PARAMS }, stdout, stderr: String::new() }
}

pub fn emit(cfg: &RunConfig, what: EmitKind) -> Outcome {
    let p = match params(cfg) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let result = match what {
        EmitKind::Weight => emit_weight(cfg, &p),
        EmitKind::Operator => Ok(emit_operator(cfg, &p)),
        EmitKind::Poly => emit_poly(cfg, &p),
        EmitKind::Recurrence | EmitKind::Norms => emit_recurrence(cfg, &p),
        EmitKind::Eigenvalues => Ok(emit_eigenvalues(cfg, &p)),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => failure(&e),
    }
}

fn emit_weight(cfg: &RunConfig, p: &ParamSet) -> Result<String, Error> {
    let w = build_weight(p)?;
    if let Some(t) = cfg.at {
        let m = weight_eval(&w, t)?;
        let det = weight_det(&w, t);
        let j = json!({ "params": params_json(p), "t": json_number(t), "weight": json_matrix(&m), "det": json_number(det) });
        return Ok(render(cfg.format, j, || {
            let mut tab = Table::new(&["t", "W11", "W12", "W21", "W22", "det"]);
            let mut row = vec![number(t)];
            row.extend(cells(&m));
            row.push(number(det));
            tab.push(row);
            tab
        }));
    }
    let coeffs = [w.w0, w.w1, w.w2];
    let j = json!({
        "params": params_json(p),
        "polynomial": coeffs.iter().map(json_matrix).collect::<Vec<_>>(),
    });
    Ok(render(cfg.format, j, || {
        let mut tab = Table::new(&["k", "W11", "W12", "W21", "W22"]);
        for (k, m) in coeffs.iter().enumerate() {
            let mut row = vec![k.to_string()];
            row.extend(cells(m));
            tab.push(row);
        }
        tab
    }))
}

fn emit_operator(cfg: &RunConfig, p: &ParamSet) -> String {
    let op = build_operator(p);
    let j = json!({ "params": params_json(p), "C": json_matrix(&op.c), "U": json_matrix(&op.u), "V": json_matrix(&op.v) });
    render(cfg.format, j, || {
        let mut tab = Table::new(&["name", "M11", "M12", "M21", "M22"]);
        for (name, m) in [("C", op.c), ("U", op.u), ("V", op.v)] {
            let mut row = vec![name.to_string()];
            row.extend(cells(&m));
            tab.push(row);
        }
        tab
    })
}

fn emit_poly(cfg: &RunConfig, p: &ParamSet) -> Result<String, Error> {
    let polys = monic_sequence(p, cfg.degree)?;
    let arr: Vec<Value> = polys
        .iter()
        .map(|q| Value::Array(q.coeffs().iter().map(json_matrix).collect()))
        .collect();
    let j = json!({ "params": params_json(p), "polynomials": arr });
    Ok(render(cfg.format, j, || {
        let mut tab = Table::new(&["n", "k", "P11", "P12", "P21", "P22"]);
        for (n, q) in polys.iter().enumerate() {
            for (k, m) in q.coeffs().iter().enumerate() {
                let mut row = vec![n.to_string(), k.to_string()];
                row.extend(cells(m));
                tab.push(row);
            }
        }
        tab
    }))
}

/// `n, A11, A22, B11, B12, B21, B22, S11, S22, lambda, mu` with `A_0 = I`.
pub const RECURRENCE_COLUMNS: [&str; 11] =
    ["n", "A11", "A22", "B11", "B12", "B21", "B22", "S11", "S22", "lambda", "mu"];

fn emit_recurrence(cfg: &RunConfig, p: &ParamSet) -> Result<String, Error> {
    let s = norms(p, cfg.degree)?;
    let rows: Vec<(usize, Matrix2, Matrix2, Matrix2, f64, f64)> = (0..=cfg.degree)
        .map(|n| {
            let r = recurrence_closed(p, n);
            let e = eigenvalue(p, n);
            (n, r.a, r.b, s.s[n], e.lambda, e.mu)
        })
        .collect();
    let arr: Vec<Value> = rows
        .iter()
        .map(|(n, a, b, s, l, m)| {
            json!({
                "n": n, "A": json_matrix(a), "B": json_matrix(b), "S": json_matrix(s),
                "lambda": json_number(*l), "mu": json_number(*m),
            })
        })
        .collect();
    let j = json!({ "params": params_json(p), "rows": arr });
    Ok(render(cfg.format, j, || {
        let mut tab = Table::new(&RECURRENCE_COLUMNS);
        for (n, a, b, s, l, m) in &rows {
            let mut row = vec![n.to_string(), number(a.get(0, 0)), number(a.get(1, 1))];
            row.extend(cells(b));
            row.extend([number(s.get(0, 0)), number(s.get(1, 1)), number(*l), number(*m)]);
            tab.push(row);
        }
        tab
    }))
}

fn emit_eigenvalues(cfg: &RunConfig, p: &ParamSet) -> String {
    let eig: Vec<_> = (0..=cfg.degree).map(|n| eigenvalue(p, n)).collect();
    let arr: Vec<Value> = eig
        .iter()
        .map(|e| json!({ "n": e.n, "lambda": json_number(e.lambda), "mu": json_number(e.mu) }))
        .collect();
    let j = json!({ "params": params_json(p), "rows": arr });
    render(cfg.format, j, || {
        let mut tab = Table::new(&["n", "lambda", "mu"]);
        for e in &eig {
            tab.push(vec![e.n.to_string(), number(e.lambda), number(e.mu)]);
        }
        tab
    })
}

/// One check tagged with the suite it came from.
#[derive(Clone, Debug)]
pub struct Tagged {
    pub suite: &'static str,
    pub check: CheckResult,
}

/// The checks of one parameter suite. Symmetry adds the determinant checks and
/// orthogonality the rational-reference checks.
pub fn run_suite(suite: Suite, p: &ParamSet, degree: usize, tolerance: f64) -> Vec<CheckResult> {
    match suite {
        Suite::Symmetry => {
            let mut v = symmetry_suite(p);
            v.extend(exact::determinant_checks(p, DETERMINANT_POINTS));
            v
        }
        Suite::Orthogonality => {
            let mut v = orthogonality_suite(p, degree, tolerance);
            v.extend(exact::orthogonality_checks(p, degree, tolerance));
            v
        }
        Suite::Recurrence => recurrence_suite(p, degree, tolerance),
        Suite::Hypergeom => hypergeom_suite(p, degree, tolerance),
        Suite::Irreducibility => irreducibility_suite(p),
        Suite::Gegenbauer | Suite::All => unreachable!("not a single parameter suite"),
    }
}

const PARAM_SUITES: [Suite; 5] =
    [Suite::Symmetry, Suite::Orthogonality, Suite::Recurrence, Suite::Hypergeom, Suite::Irreducibility];

pub fn verify(cfg: &RunConfig, suite: Suite) -> Outcome {
    let pq = || -> Result<(f64, f64), Outcome> {
        let (p, q) = (required(cfg.p, "p")?, required(cfg.q, "q")?);
        if !(p.is_finite() && q.is_finite()) {
            return Err(param_failure(&Error::NonFinite { what: "p, q" }));
        }
        Ok((p, q))
    };
    let mut header = Map::new();
    let mut checks: Vec<Tagged> = Vec::new();
    let geg = |checks: &mut Vec<Tagged>, p: f64, q: f64| {
        checks.extend(gegenbauer_suite(p, q, cfg.tolerance).into_iter().map(|check| Tagged { suite: "gegenbauer", check }));
    };

    match suite {
        Suite::Gegenbauer => {
            let (p, q) = match pq() {
                Ok(x) => x,
                Err(o) => return o,
            };
            header.insert("gegenbauer".into(), json!({ "p": json_number(p), "q": json_number(q) }));
            geg(&mut checks, p, q);
        }
        _ => {
            let params = match params(cfg) {
                Ok(p) => p,
                Err(o) => return o,
            };
            header.insert("params".into(), params_json(&params));
            let selected: Vec<Suite> = if suite == Suite::All { PARAM_SUITES.to_vec() } else { vec![suite] };
            // independent suites run concurrently; results are joined in order
            let results: Vec<Vec<CheckResult>> = std::thread::scope(|s| {
                let handles: Vec<_> = selected
                    .iter()
                    .map(|&su| s.spawn(move || run_suite(su, &params, cfg.degree, cfg.tolerance)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
            });
            for (su, res) in selected.iter().zip(results) {
                checks.extend(res.into_iter().map(|check| Tagged { suite: su.as_str(), check }));
            }
            if suite == Suite::All {
                if let (Some(p), Some(q)) = (cfg.p, cfg.q) {
                    header.insert("gegenbauer".into(), json!({ "p": json_number(p), "q": json_number(q) }));
                    geg(&mut checks, p, q);
                }
            }
        }
    }

    let pass = checks.iter().all(|t| t.check.pass);
    let first = checks.iter().find(|t| !t.check.pass);
    header.insert("suite".into(), Value::String(suite.as_str().into()));
    header.insert("degree".into(), json!(cfg.degree));
    header.insert("tolerance".into(), json_number(cfg.tolerance));
    header.insert("pass".into(), Value::Bool(pass));
    header.insert("first_failure".into(), first.map_or(Value::Null, check_json));
    header.insert("checks".into(), Value::Array(checks.iter().map(check_json).collect()));

    let stdout = render(cfg.format, Value::Object(header), || {
        let mut tab = Table::new(&["suite", "check", "residual", "threshold", "pass", "n", "entry", "t"]);
        for t in &checks {
            let c = &t.check;
            let loc = c.first_failure.unwrap_or_default();
            tab.push(vec![
                t.suite.to_string(),
                c.name.to_string(),
                number(c.residual),
                number(c.threshold),
                c.pass.to_string(),
                loc.n.map_or(String::new(), |n| n.to_string()),
                loc.entry.map_or(String::new(), |(i, j)| format!("{i}{j}")),
                loc.t.map_or(String::new(), number),
            ]);
        }
        tab
    });
    let stderr = first.map_or(String::new(), |t| format!("check failed: {}/{}\n", t.suite, t.check.name));
    Outcome { code: if pass { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr }
}

fn check_json(t: &Tagged) -> Value {
    let c = &t.check;
    let loc = c.first_failure.map_or(Value::Null, |l| {
        json!({
            "n": l.n,
            "entry": l.entry.map(|(i, j)| vec![i, j]),
            "t": l.t.map(json_number),
        })
    });
    json!({
        "suite": t.suite,
        "name": c.name,
        "residual": json_number(c.residual),
        "threshold": json_number(c.threshold),
        "pass": c.pass,
        "first_failure": loc,
    })
}
