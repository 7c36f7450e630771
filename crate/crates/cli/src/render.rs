//! JSON is canonical; CSV and tables render one array of the JSON record.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Rounds to ten digits after the leading one, so floats print identically
/// everywhere (`1.6180339887`).
pub fn sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.10e}").parse().expect("formatted float parses")
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Format {
    /// Renders `record`, or for CSV and tables the array at `pointer`
    /// restricted to `columns`.
    pub fn render(self, record: &Value, pointer: &str, columns: &[&str]) -> String {
        let rows: Vec<Vec<String>> = match record.pointer(pointer) {
            Some(Value::Array(items)) => items
                .iter()
                .map(|row| columns.iter().map(|c| cell(&row[*c])).collect())
                .collect(),
            _ => Vec::new(),
        };
        match self {
            Format::Json => pretty(record),
            Format::Csv => {
                let mut out = vec![columns.join(",")];
                out.extend(rows.iter().map(|r| r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")));
                out.join("\n")
            }
            Format::Table => {
                let widths: Vec<usize> = columns
                    .iter()
                    .enumerate()
                    .map(|(k, c)| rows.iter().map(|r| r[k].chars().count()).chain([c.len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                let mut out = vec![line(columns.to_vec())];
                out.push(line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
                out.extend(rows.iter().map(|r| line(r.iter().map(|s| s.as_str()).collect())));
                out.join("\n")
            }
        }
    }
}
