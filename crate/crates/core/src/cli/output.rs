//! Tabular reports and their CSV/JSON encodings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map};

use super::invocation::Invocation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Shortest round-trip text for a float; exponent form outside `[1e-4, 1e15)`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let a = v.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Num(v) => format_float(*v),
            Value::Int(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Num(v) => json!(v),
            Value::Int(v) => json!(v),
            Value::Bool(v) => json!(v),
            Value::Text(s) => json!(s),
        }
    }
}

/// A named-column table plus the invocation that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub invocation: Invocation,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Domain caveat attached to an otherwise valid result.
    pub warning: Option<String>,
}

impl Report {
    pub fn new(invocation: Invocation, columns: Vec<&'static str>) -> Self {
        Self {
            invocation,
            columns,
            rows: Vec::new(),
            warning: None,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }

    /// Numeric column as floats; non-numeric cells are skipped.
    pub fn numbers(&self, name: &str) -> Vec<f64> {
        self.column(name)
            .unwrap_or_default()
            .into_iter()
            .filter_map(|v| match v {
                Value::Num(x) => Some(*x),
                Value::Int(x) => Some(*x as f64),
                _ => None,
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let inputs = serde_json::to_string(&self.invocation).expect("invocation serializes");
        writeln!(out, "# spinstar {}", self.invocation.name()).unwrap();
        writeln!(out, "# inputs: {inputs}").unwrap();
        if let Some(w) = &self.warning {
            writeln!(out, "# warning: {w}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, v) in self.columns.iter().zip(row) {
                    obj.insert(name.to_string(), v.json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.invocation.name()));
        doc.insert(
            "inputs".into(),
            serde_json::to_value(&self.invocation).expect("invocation serializes"),
        );
        if let Some(w) = &self.warning {
            doc.insert("warning".into(), json!(w));
        }
        doc.insert("columns".into(), json!(self.columns));
        doc.insert("rows".into(), serde_json::Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(doc))
            .expect("report serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.82, 1.348e-48, -9283.7, 73.997e6, 1.0 / 3.0, 5e-324, 1e300] {
            let text = format_float(v);
            assert_eq!(text.parse::<f64>().unwrap(), v, "{text}");
        }
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(2.5), "2.5");
        assert_eq!(format_float(1.2e-8), "1.2e-8");
    }

    #[test]
    fn text_cells_are_quoted_when_needed() {
        assert_eq!(Value::from("a,b").csv(), "\"a,b\"");
        assert_eq!(Value::from("plain").csv(), "plain");
    }
}
