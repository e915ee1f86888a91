//! Number, CSV and table rendering.
//!
//! Numbers use the shortest decimal string that parses back to the same
//! double, so every emitted value round-trips exactly.

use mvop_core::Matrix2;
use serde_json::Value;

/// Shortest round-trip decimal. Plain notation for `1e-5 <= |x| < 1e16`,
/// scientific otherwise. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        // keeps the sign of -0.0
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let a = x.abs();
    if !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A JSON number, or `null` when not finite.
pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// `[m11, m12, m21, m22]`.
pub fn json_matrix(m: &Matrix2) -> Value {
    Value::Array(m.to_row_major().iter().map(|&x| json_number(x)).collect())
}

/// A rectangular table with a header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| (*s).to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Comma-separated, one line per row, trailing newline. Cells never
    /// contain commas or quotes, so no quoting is needed.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// Right-aligned columns separated by two spaces.
    pub fn to_pretty(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| self.rows.iter().map(|r| r[j].len()).chain([self.header[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let mut s = parts.join("  ");
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// Pretty JSON with a trailing newline. Object keys come out sorted.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip() {
        for &x in &[0.5, 1.0 / 3.0, 0.2, -4.0, 1e-7, 2.5e-300, 6.02e23, 123456.789, f64::MAX, f64::MIN_POSITIVE] {
            let s = number(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(number(1.0 / 3.0), "0.3333333333333333");
        assert_eq!(number(-5.0), "-5");
        assert_eq!(number(1e-7), "1e-7");
        assert_eq!(number(0.0), "0");
        assert_eq!(number(-0.0), "-0");
    }

    #[test]
    fn non_finite() {
        assert_eq!(number(f64::NAN), "NaN");
        assert_eq!(json_number(f64::INFINITY), Value::Null);
    }

    #[test]
    fn csv_and_pretty() {
        let mut t = Table::new(&["n", "x"]);
        t.push(vec!["0".into(), "0.5".into()]);
        t.push(vec!["10".into(), "-1".into()]);
        assert_eq!(t.to_csv(), "n,x\n0,0.5\n10,-1\n");
        assert_eq!(t.to_pretty(), " n    x\n 0  0.5\n10   -1\n");
    }

    #[test]
    fn matrix_is_row_major() {
        let v = json_matrix(&Matrix2::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(v.to_string(), "[1.0,2.0,3.0,4.0]");
    }
}
