//! Tabular output as CSV or JSON.
//!
//! Numbers are rendered with 12 significant digits in both formats so that
//! identical runs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Text(String),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::Int(x)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped,
/// scientific notation outside 1e-5 ≤ |x| < 1e12.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Field {
    fn csv_cell(&self) -> String {
        match self {
            Field::Num(x) => format_number(*x),
            Field::Int(n) => n.to_string(),
            Field::Text(s) if s.contains([',', '"', '\n', '\r']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Field::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Num(x) => format_number(*x)
                .parse::<f64>()
                .ok()
                .and_then(|v| serde_json::Number::from_f64(v).map(Value::Number))
                .unwrap_or(Value::Null),
            Field::Int(n) => Value::from(*n),
            Field::Text(s) => Value::from(s.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// A one-row table from `(column, value)` pairs.
    pub fn record(fields: Vec<(&str, Field)>) -> Self {
        let (columns, row): (Vec<_>, Vec<_>) = fields.into_iter().unzip();
        let mut t = Self::new(columns);
        t.push(row);
        t
    }

    pub fn push(&mut self, row: Vec<Field>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<Field>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Field::csv_cell).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn row_json(&self, row: &[Field]) -> Value {
        let map: Map<String, Value> = self
            .columns
            .iter()
            .cloned()
            .zip(row.iter().map(Field::to_json))
            .collect();
        Value::Object(map)
    }

    /// A single object for one-row tables, otherwise an array of objects.
    pub fn to_json(&self) -> String {
        let value = if self.rows.len() == 1 {
            self.row_json(&self.rows[0])
        } else {
            Value::Array(self.rows.iter().map(|r| self.row_json(r)).collect())
        };
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or to stdout when no path is given.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let text = self.render(format);
        match path {
            Some(p) => fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(4.0), "4");
        assert_eq!(format_number(-0.5), "-0.5");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(2.0 / 3.0 * 100.0), "66.6666666667");
        assert_eq!(format_number(1.5e-17), "1.5e-17");
        assert_eq!(format_number(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_number(3.9999999999999996), "4");
        assert_eq!(format_number(0.000123), "0.000123");
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new(["p", "l3"]);
        t.push(vec![Field::Num(0.0), Field::Num(6.0)]);
        t.push(vec![Field::Num(0.5), Field::Num(3.0)]);
        assert_eq!(t.to_csv(), "p,l3\n0,6\n0.5,3\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[1]["l3"], 3.0);

        let r = Table::record(vec![("state", "singlet".into()), ("n", 3u64.into())]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["state"], "singlet");
        assert_eq!(v["n"], 3);
    }

    #[test]
    fn csv_quotes_text_with_separators() {
        let r = Table::record(vec![("observables", "sx,sz".into()), ("note", "a\"b".into())]);
        assert_eq!(r.to_csv(), "observables,note\n\"sx,sz\",\"a\"\"b\"\n");
    }
}
