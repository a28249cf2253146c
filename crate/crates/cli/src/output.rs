//! Deterministic CSV and JSON emission.
//!
//! Identical inputs must yield byte-identical files: floats use a fixed
//! scientific notation at a configured number of significant digits (CSV)
//! or the shortest round-trip representation (JSON), JSON object keys are
//! emitted in sorted order, and nothing time- or machine-dependent is ever
//! written.

use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::config::Format;
use crate::error::CliResult;

/// One table cell: integers and labels print exactly; floats honor the
/// configured precision in CSV and map non-finite values to null in JSON.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self, significant: usize) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_float(*x, significant),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

/// A named table: one CSV file, or one entry in the JSON data object.
#[derive(Debug)]
pub struct Table {
    /// File stem (`<name>.csv`) and JSON key.
    pub name: &'static str,
    /// Column names, units encoded in the name where applicable.
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Where and how one run writes its files.
pub struct Sink {
    pub dir: PathBuf,
    pub format: Format,
    pub precision: usize,
}

impl Sink {
    /// Writes a command's tables and metadata.
    ///
    /// CSV mode writes `<table>.csv` per table plus `<command>.meta.json`;
    /// JSON mode writes a single `<command>.json` holding `meta` and either
    /// the generic table rendering or `json_data` when a command prefers a
    /// different shape (the phase-space grid uses axes plus a flat matrix).
    pub fn emit(
        &self,
        command: &str,
        tables: &[Table],
        meta: &Value,
        json_data: Option<Value>,
    ) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        match self.format {
            Format::Csv => {
                for table in tables {
                    let path = self.dir.join(format!("{}.csv", table.name));
                    fs::write(path, self.render_csv(table))?;
                }
                let path = self.dir.join(format!("{command}.meta.json"));
                fs::write(path, render_json(meta))?;
            }
            Format::Json => {
                let data = json_data.unwrap_or_else(|| render_tables(tables));
                let doc = json!({ "data": data, "meta": meta });
                let path = self.dir.join(format!("{command}.json"));
                fs::write(path, render_json(&doc))?;
            }
        }
        Ok(())
    }

    fn render_csv(&self, table: &Table) -> String {
        let mut text = table.columns.join(",");
        text.push('\n');
        for row in &table.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv(self.precision)).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        text
    }
}

fn render_tables(tables: &[Table]) -> Value {
    let mut map = serde_json::Map::new();
    for table in tables {
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect();
        map.insert(
            table.name.to_string(),
            json!({ "columns": table.columns, "rows": rows }),
        );
    }
    Value::Object(map)
}

fn render_json(value: &Value) -> String {
    // Object keys live in a sorted map, so this is deterministic.
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}

/// Fixed scientific notation with the requested significant digits;
/// non-finite values become the literal "nan".
pub fn format_float(x: f64, significant: usize) -> String {
    if !x.is_finite() {
        return "nan".to_string();
    }
    format!("{:.*e}", significant - 1, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_round_trip_exact_at_full_precision() {
        for &x in &[0.0, -1.0, 0.1, 2.0 / 3.0, -5.933169335562373e-1, 1.4e-300] {
            let text = format_float(x, 17);
            assert_eq!(text.parse::<f64>().unwrap(), x, "round trip of {text}");
        }
        assert_eq!(format_float(f64::NAN, 17), "nan");
        assert_eq!(format_float(f64::INFINITY, 17), "nan");
        assert_eq!(format_float(0.125, 3), "1.25e-1");
    }

    #[test]
    fn json_cells_map_non_finite_to_null() {
        assert_eq!(Cell::Num(f64::NAN).json(), Value::Null);
        assert_eq!(Cell::Num(0.5).json(), json!(0.5));
        assert_eq!(Cell::Int(-3).json(), json!(-3));
        assert_eq!(Cell::Text("quantum".into()).json(), json!("quantum"));
    }
}
