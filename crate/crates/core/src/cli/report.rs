//! Tabular reports rendered as CSV or JSON.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use super::config::OutputFormat;
use crate::conditions::ConditionReport;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(usize),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_f64(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_owned())
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// `{"metadata": ..., "rows": [{column: value}, ...]}`.
    pub fn to_json(&self, metadata: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_owned(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat, metadata: Value) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(metadata),
        }
    }
}

pub const CONDITION_COLUMNS: [&str; 7] = [
    "condition_id",
    "v_or_n",
    "ratio",
    "running_sup",
    "trend",
    "tail_cutoff",
    "tail_warning",
];

/// Append one row per index of a condition report.
pub fn push_condition(table: &mut Table, report: &ConditionReport) {
    for (i, &idx) in report.indices.iter().enumerate() {
        table.push(vec![
            report.id.as_str().into(),
            idx.into(),
            report.ratios[i].into(),
            report.running_sup[i].into(),
            report.trend.as_str().into(),
            report.tail_cutoff.into(),
            report.tail_warnings[i].into(),
        ]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(-0.1).parse::<f64>().unwrap(), -0.1);
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec!["x".into(), 2usize.into(), Cell::Empty]);
        t.push(vec!["y".into(), 3usize.into(), f64::INFINITY.into()]);
        assert_eq!(t.to_csv(), "a,b,c\nx,2,\ny,3,inf\n");
        let v: Value = serde_json::from_str(&t.to_json(serde_json::json!({"k": 1}))).unwrap();
        assert_eq!(v["rows"][0]["b"], 2);
        assert!(v["rows"][1]["c"].is_null());
        assert_eq!(v["metadata"]["k"], 1);
    }
}
