//! Tabular output. Floats are always written with 17 significant digits and
//! non-numeric results as bare lowercase tokens.

use crate::error::CliError;
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// A float that serializes to JSON in [`format_float`] form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_str(token::ERROR);
        }
        let raw = RawValue::from_string(format_float(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub mod token {
    pub const IMAGINARY: &str = "imaginary";
    pub const DIVERGENT: &str = "divergent";
    pub const NONE: &str = "none";
    pub const ERROR: &str = "error";
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Token(&'static str),
    Text(String),
}

impl Cell {
    /// Numeric cell; a non-finite value becomes the error token.
    pub fn num(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Token(token::ERROR)
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Cell::Token(t) if *t == token::ERROR)
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Token(t) => (*t).to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) => Num(*x).serialize(s),
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Token(t) => s.serialize_str(t),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Write to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.5), "-2.5000000000000000e0");
        let digits = format_float(std::f64::consts::PI).split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(digits.len(), 17);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["x", "e"]);
        t.push(vec![Cell::num(1.0), Cell::Token(token::IMAGINARY)]);
        t.push(vec![Cell::num(f64::NAN), Cell::Text("a,b".into())]);
        let s = t.to_csv().unwrap();
        assert_eq!(s, "x,e\n1.0000000000000000e0,imaginary\nerror,\"a,b\"\n");
        assert!(!s.contains('\r') && !s.to_lowercase().contains("nan"));
    }

    #[test]
    fn json_numbers_are_fixed_width() {
        let mut t = Table::new(["x"]);
        t.push(vec![Cell::num(0.1)]);
        let s = t.to_json().unwrap();
        assert!(s.contains("1.0000000000000001e-1"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0][0].as_f64(), Some(0.1));
    }
}
