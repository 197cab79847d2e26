//! Row records and their text, CSV and JSON renderings.

use serde_json::{json, Map, Value};

use super::args::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Real(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// One output row: column names with values, in column order.
pub type Record = Vec<(&'static str, Cell)>;

/// Pass/fail counts and the largest residual over the rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub pass_count: u64,
    pub fail_count: u64,
    pub max_residual: Option<f64>,
}

pub fn summarize(rows: &[Record]) -> Summary {
    let mut s = Summary { pass_count: 0, fail_count: 0, max_residual: None };
    for row in rows {
        for (name, cell) in row {
            match (*name, cell) {
                ("pass", Cell::Bool(true)) => s.pass_count += 1,
                ("pass", Cell::Bool(false)) => s.fail_count += 1,
                ("residual", Cell::Real(r)) if r.is_finite() => {
                    s.max_residual = Some(s.max_residual.map_or(*r, |m: f64| m.max(*r)));
                }
                _ => {}
            }
        }
    }
    s
}

/// Seventeen significant digits.
fn real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn plain(c: &Cell) -> String {
    match c {
        Cell::Text(s) => s.clone(),
        Cell::Real(x) => real(*x),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn csv_field(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn json_cell(c: &Cell) -> Value {
    match c {
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Real(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
        Cell::Int(n) => json!(n),
        Cell::Bool(b) => json!(b),
        Cell::Empty => Value::Null,
    }
}

fn header(rows: &[Record]) -> Vec<&'static str> {
    rows.first().map(|r| r.iter().map(|c| c.0).collect()).unwrap_or_default()
}

/// Renders rows in the configured format.
pub fn render(cfg: &RunConfig, rows: &[Record]) -> String {
    let summary = summarize(rows);
    match cfg.format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&header(rows).join(","));
            out.push('\n');
            for row in rows {
                let fields: Vec<String> = row.iter().map(|(_, c)| csv_field(plain(c))).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(r.iter().map(|(k, c)| (k.to_string(), json_cell(c))).collect::<Map<_, _>>()))
                .collect();
            let doc = json!({
                "config": cfg,
                "rows": rows,
                "summary": {
                    "pass_count": summary.pass_count,
                    "fail_count": summary.fail_count,
                    "max_residual": summary.max_residual,
                },
            });
            let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Text => {
            let head = header(rows);
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|(_, c)| plain(c)).collect()).collect();
            let mut width: Vec<usize> = head.iter().map(|h| h.len()).collect();
            for r in &cells {
                for (i, c) in r.iter().enumerate() {
                    if i < width.len() {
                        width[i] = width[i].max(c.chars().count());
                    }
                }
            }
            let line = |fields: Vec<&str>| -> String {
                let padded: Vec<String> =
                    fields.iter().enumerate().map(|(i, f)| format!("{f:<w$}", w = width.get(i).copied().unwrap_or(0))).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = String::new();
            if !head.is_empty() {
                out.push_str(&line(head.clone()));
            }
            for r in &cells {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            out.push_str(&format!(
                "rows: {}  pass: {}  fail: {}  max residual: {}\n",
                rows.len(),
                summary.pass_count,
                summary.fail_count,
                summary.max_residual.map_or("-".to_string(), real)
            ));
            out
        }
    }
}
