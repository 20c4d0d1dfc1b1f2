//! Output tables: CSV with a `#` parameter-echo header, or JSON as
//! `{"params": ..., "rows": ...}`.
//!
//! Formatting is locale-free and deterministic: floats print with 17
//! significant digits (`{:.16e}`) in CSV; JSON uses serde_json's exact
//! shortest round-trip encoding, so re-parsing reproduces every bit.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Str(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) => json!(x),
            Cell::Str(s) => json!(s),
            Cell::Null => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    /// Subcommand name, echoed in the header.
    pub command: &'static str,
    /// Input (and derived) parameters, echoed in order.
    pub params: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# pt-spectra ");
        out.push_str(self.command);
        for (k, v) in &self.params {
            out.push(' ');
            out.push_str(k);
            out.push('=');
            out.push_str(&v.csv());
        }
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut params = Map::new();
        params.insert("command".to_string(), json!(self.command));
        for (k, v) in &self.params {
            params.insert((*k).to_string(), v.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "params": Value::Object(params), "rows": rows });
        let mut s = serde_json::to_string(&doc).expect("table cells are always serializable");
        s.push('\n');
        s
    }
}
