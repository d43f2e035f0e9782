//! Tabular results and their CSV / JSON encodings.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so both encodings round-trip bit-exactly. Absent values are empty
//! CSV fields and JSON `null`.

use std::io::Write;

use faraday_core::sweep::{Cell, Meta, Row, SweepResult};
use serde_json::{Map, Number, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Column names, rows of cells, and free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            metadata: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.clone(), cell_json(c)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("metadata".into(), Value::Object(self.metadata.clone()));
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }
}

impl<R: Row> From<&SweepResult<R>> for Table {
    fn from(s: &SweepResult<R>) -> Self {
        let mut t = Table::new(R::COLUMNS);
        for r in &s.rows {
            t.push(r.cells());
        }
        for (k, v) in &s.metadata {
            t.metadata.insert((*k).to_string(), meta_json(v));
        }
        t
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format!("{x:?}"),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => (*s).to_string(),
        Cell::Absent => String::new(),
    }
}

fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(x) => num(*x),
        Cell::Int(n) => Value::from(*n),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String((*s).to_string()),
        Cell::Absent => Value::Null,
    }
}

pub fn meta_json(m: &Meta) -> Value {
    match m {
        Meta::Num(x) => num(*x),
        Meta::Int(n) => Value::from(*n),
        Meta::Text(s) => Value::String(s.clone()),
        Meta::Numbers(v) => Value::Array(v.iter().map(|&x| num(x)).collect()),
        Meta::Group(g) => Value::Object(g.iter().map(|(k, v)| ((*k).to_string(), meta_json(v))).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "label", "flag", "maybe"]);
        t.push(vec![Cell::Num(0.1), Cell::Text("beta1"), Cell::Bool(true), Cell::Absent]);
        t.push(vec![Cell::Num(1e-300), Cell::Text("beta2"), Cell::Bool(false), Cell::Num(-2.5)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines, ["x,label,flag,maybe", "0.1,beta1,true,", "1e-300,beta2,false,-2.5"]);
    }

    #[test]
    fn json_layout() {
        let v = sample().to_json();
        assert!(v["metadata"].is_object());
        assert_eq!(v["rows"][0]["maybe"], Value::Null);
        assert_eq!(v["rows"][1]["x"].as_f64(), Some(1e-300));
    }
}
