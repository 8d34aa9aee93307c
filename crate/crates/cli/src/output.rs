//! Deterministic JSON and CSV encoding.
//!
//! Floats are written as `{:.16e}` (17 significant digits) in both formats so
//! that a run encodes the same values either way; non-finite values become
//! JSON `null` and an empty CSV field.

use std::io::Write;
use std::path::Path;

use serde::ser::{Error as _, SerializeMap};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::config::Format;
use crate::error::CliResult;

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format_float(self.0))
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Num(x) => format_float(*x),
            Field::Int(n) => n.to_string(),
            Field::Text(t) => t.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) => Num(*x).serialize(s),
            Field::Int(n) => s.serialize_u64(*n),
            Field::Text(t) => s.serialize_str(t),
            Field::Bool(b) => s.serialize_bool(*b),
        }
    }
}

/// An ordered JSON object.
#[derive(Debug, Clone, Default)]
pub struct Fields(pub Vec<(&'static str, Field)>);

impl Fields {
    pub fn num(mut self, key: &'static str, x: f64) -> Self {
        self.0.push((key, Field::Num(x)));
        self
    }

    pub fn int(mut self, key: &'static str, n: usize) -> Self {
        self.0.push((key, Field::Int(n as u64)));
        self
    }

    pub fn text(mut self, key: &'static str, t: impl Into<String>) -> Self {
        self.0.push((key, Field::Text(t.into())));
        self
    }

    pub fn bool(mut self, key: &'static str, b: bool) -> Self {
        self.0.push((key, Field::Bool(b)));
        self
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub case: String,
    pub params: Fields,
    pub versions: Fields,
}

impl Meta {
    pub fn new(case: &str, params: Fields) -> Self {
        Self {
            case: case.to_string(),
            params,
            versions: Fields::default()
                .text("pdm", env!("CARGO_PKG_VERSION"))
                .text("pdm_core", pdm_core::VERSION),
        }
    }
}

/// A document with metadata and any number of named row tables. JSON keeps
/// every table; CSV holds only the primary one.
#[derive(Debug, Clone)]
pub struct Document {
    pub meta: Meta,
    pub tables: Vec<(&'static str, Vec<Fields>)>,
    pub extra: Fields,
    pub primary: &'static str,
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("meta", &self.meta)?;
        for (k, v) in &self.extra.0 {
            map.serialize_entry(k, v)?;
        }
        for (name, rows) in &self.tables {
            map.serialize_entry(name, rows)?;
        }
        map.end()
    }
}

impl Document {
    pub fn encode(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Json => {
                let mut buf = serde_json::to_vec_pretty(self)
                    .map_err(|e| std::io::Error::other(e.to_string()))?;
                buf.push(b'\n');
                Ok(buf)
            }
            Format::Csv => {
                let rows = self
                    .tables
                    .iter()
                    .find(|(name, _)| *name == self.primary)
                    .map(|(_, rows)| rows.as_slice())
                    .unwrap_or(&[]);
                let mut w = csv::Writer::from_writer(Vec::new());
                if let Some(first) = rows.first() {
                    w.write_record(first.0.iter().map(|(k, _)| *k))?;
                }
                for row in rows {
                    w.write_record(row.0.iter().map(|(_, v)| v.csv()))?;
                }
                w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
            }
        }
    }
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_float(1.9503339052291433), "1.9503339052291433e0");
        assert_eq!(format_float(-0.25), "-2.5000000000000000e-1");
        assert_eq!(format_float(f64::NAN), "");
        let back: f64 = format_float(0.1 + 0.2).parse().unwrap();
        assert_eq!(back, 0.1 + 0.2);
    }

    #[test]
    fn json_and_csv_share_the_encoding() {
        let doc = Document {
            meta: Meta::new("v0", Fields::default().num("m0", 1.0)),
            tables: vec![("eigenvalues", vec![Fields::default().int("index", 1).num("eps_scaled", 2.0)])],
            extra: Fields::default(),
            primary: "eigenvalues",
        };
        let json = String::from_utf8(doc.encode(Format::Json).unwrap()).unwrap();
        let csv = String::from_utf8(doc.encode(Format::Csv).unwrap()).unwrap();
        assert!(json.contains("\"eps_scaled\": 2.0000000000000000e0"));
        assert_eq!(csv, "index,eps_scaled\n1,2.0000000000000000e0\n");
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["meta"]["case"], "v0");
    }
}
