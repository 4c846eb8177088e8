//! Deterministic table emission: CSV (comma, no quoting), line-delimited
//! JSON, and pipe markdown. Identical inputs produce byte-identical output.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

/// Row-oriented writer over one of the three formats.
pub struct TableWriter {
    format: Format,
    columns: Vec<&'static str>,
    out: String,
}

impl TableWriter {
    pub fn new(format: Format, columns: Vec<&'static str>) -> TableWriter {
        let mut w = TableWriter {
            format,
            columns,
            out: String::new(),
        };
        match w.format {
            Format::Csv => {
                let _ = writeln!(w.out, "{}", w.columns.join(","));
            }
            Format::Markdown => {
                let _ = writeln!(w.out, "| {} |", w.columns.join(" | "));
                let dashes: Vec<&str> = w.columns.iter().map(|_| "---").collect();
                let _ = writeln!(w.out, "| {} |", dashes.join(" | "));
            }
            Format::Json => {}
        }
        w
    }

    /// Append one row; `cells` must match the column list in length and order.
    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns.len(), "column count mismatch");
        match self.format {
            Format::Csv => {
                let _ = writeln!(self.out, "{}", cells.join(","));
            }
            Format::Markdown => {
                let _ = writeln!(self.out, "| {} |", cells.join(" | "));
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                for (k, v) in self.columns.iter().zip(cells) {
                    obj.insert((*k).to_string(), serde_json::Value::String(v.clone()));
                }
                let _ = writeln!(self.out, "{}", serde_json::Value::Object(obj));
            }
        }
    }

    /// Free-form JSON object row (ignored for CSV/markdown bodies).
    pub fn json_object(&mut self, value: serde_json::Value) {
        if self.format == Format::Json {
            let _ = writeln!(self.out, "{value}");
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}
