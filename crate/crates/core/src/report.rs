//! JSON encoding of results with a fixed layout: complex numbers are
//! `[re, im]`, matrices are row-major arrays of rows, exact rationals are
//! `{"num", "den"}`, and every float carries 17 significant digits.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

use crate::linalg::{CMatrix, Cx, QMatrix, Q};

/// A float with 17 significant digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.16e}");
    Value::Number(s.parse::<Number>().expect("formatted float is valid JSON"))
}

pub fn complex(z: Cx) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

pub fn cmatrix(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn int_matrix<const N: usize>(m: &[[i64; N]; N]) -> Value {
    Value::Array(m.iter().map(|row| Value::from(row.to_vec())).collect())
}

fn big(n: &num::BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub fn rational(x: &Q) -> Value {
    let mut m = Map::new();
    m.insert("num".into(), big(x.numer()));
    m.insert("den".into(), big(x.denom()));
    Value::Object(m)
}

pub fn qmatrix(m: &QMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| rational(&m[(i, j)])).collect()))
            .collect(),
    )
}

/// Named residual compared against a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance }
    }

    /// Boolean check encoded as residual `0` (holds) or `1` (fails).
    pub fn exact(name: impl Into<String>, holds: bool, tolerance: f64) -> Self {
        Check::new(name, if holds { 0.0 } else { 1.0 }, tolerance)
    }

    pub fn pass(&self) -> bool {
        self.value.is_finite() && self.value <= self.tolerance
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::from(self.name.clone()));
        m.insert("value".into(), float(self.value));
        m.insert("tolerance".into(), float(self.tolerance));
        m.insert("pass".into(), Value::Bool(self.pass()));
        Value::Object(m)
    }
}

/// Ordered report under construction.
#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
    checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", Value::from(command));
        r
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        let failed: Vec<Value> = self.failures().iter().map(|c| Value::from(c.name.clone())).collect();
        m.insert("status".into(), Value::from(if failed.is_empty() { "ok" } else { "tolerance_failure" }));
        m.insert("failed".into(), Value::Array(failed));
        Value::Object(m)
    }
}

fn is_number_pair(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.len() == 2 && a.iter().all(|x| x.is_number() || x.is_null()))
}

fn is_rational(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den"))
}

fn short_float(v: &Value) -> String {
    match v.as_f64() {
        Some(x) => format!("{x:.6e}"),
        None => "null".into(),
    }
}

fn scalar_text(v: &Value) -> String {
    if is_number_pair(v) {
        let a = v.as_array().unwrap();
        let (re, im) = (a[0].as_f64().unwrap_or(f64::NAN), a[1].as_f64().unwrap_or(f64::NAN));
        return format!("{re:+.6e}{im:+.6e}i");
    }
    if is_rational(v) {
        let (n, d) = (&v["num"], &v["den"]);
        return if d == "1" { n.to_string() } else { format!("{n}/{d}") };
    }
    match v {
        Value::Number(_) if v.as_i64().is_none() => short_float(v),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let mut out = Vec::new();
    for r in rows {
        let cells = r.as_array()?;
        if is_number_pair(r) && rows.iter().all(is_number_pair) && rows.len() != cells.len() {
            return None;
        }
        if cells.iter().any(|x| x.is_array() && !is_number_pair(x)) || cells.iter().any(|x| x.is_object() && !is_rational(x)) {
            return None;
        }
        out.push(cells.iter().map(scalar_text).collect::<Vec<_>>());
    }
    let width = out[0].len();
    (width > 0 && out.iter().all(|r| r.len() == width)).then_some(out)
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) if !is_rational(v) => {
            for (k, x) in m {
                if let Some(rows) = as_matrix(x) {
                    let _ = writeln!(out, "{pad}{k}:");
                    let w = rows.iter().flatten().map(String::len).max().unwrap_or(0);
                    for r in rows {
                        let cells: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
                        let _ = writeln!(out, "{pad}  {}", cells.join("  "));
                    }
                } else if x.is_object() && !is_rational(x) || x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object() && !is_rational(e))) {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(x, indent + 2, out);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                let _ = writeln!(out, "{pad}[{i}]");
                render(x, indent + 2, out);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) if !is_number_pair(v) => {
            format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", "))
        }
        _ => scalar_text(v),
    }
}

/// Aligned plain-text rendering for terminals.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

/// Canonical JSON text (compact, one trailing newline).
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}
