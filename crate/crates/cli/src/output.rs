//! Report rendering: JSON envelope, aligned text tables, CSV.
//!
//! Numbers are formatted exactly as `serde_json` writes them (shortest
//! round-trip decimal, `null` for non-finite), so a table cell re-parses to
//! the value in the JSON report.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use semiphoton::thresholds::{Thresholds, THRESHOLDS_VERSION};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "table" => Ok(Self::Table),
            _ => Err(format!("unknown format `{s}` (expected json, csv or table)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
            Self::Table => "table",
        })
    }
}

pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serializes")
}

/// Scalar JSON value as a cell; strings unquoted.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `(path, value)` for every scalar leaf; paths join keys and indices with `.`.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&join(k), v, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| walk(&join(&i.to_string()), v, out)),
            leaf => out.push((prefix.to_string(), cell(leaf))),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Two-column `key value` table of every leaf of `v`.
    pub fn key_value(v: &Value) -> Self {
        let mut t = Self::new(&["key", "value"]);
        for (k, v) in flatten(v) {
            t.push(vec![k, v]);
        }
        t
    }

    pub fn render(&self) -> String {
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.extend(std::iter::repeat_n(' ', w - c.chars().count() + 2));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.headers);
        let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 cells")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub thresholds_version: u32,
    pub thresholds: Thresholds,
}

impl Metadata {
    pub fn new(command: &'static str, seed: Option<u64>, thresholds: Thresholds) -> Self {
        Self {
            tool: "semiphoton",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            thresholds_version: THRESHOLDS_VERSION,
            thresholds,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    metadata: &'a Metadata,
    passed: bool,
    report: &'a R,
}

/// Everything a command produced, ready to print and save.
#[derive(Debug, Clone)]
pub struct Output {
    pub metadata: Metadata,
    pub passed: bool,
    /// The full report envelope.
    pub json: Value,
    pub table: Table,
    /// Printed for `--format csv`; defaults to `table` as CSV.
    pub csv: Option<Table>,
    /// Extra `(file name, contents)` written to the output directory.
    pub artifacts: Vec<(String, String)>,
    /// One line per failed check, printed on stderr.
    pub failures: Vec<String>,
}

impl Output {
    pub fn new<R: Serialize>(metadata: Metadata, passed: bool, report: &R, table: Table) -> Self {
        let json = serde_json::to_value(Envelope { metadata: &metadata, passed, report }).expect("report serializes");
        Self {
            metadata,
            passed,
            json,
            table,
            csv: None,
            artifacts: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json_text(),
            Format::Table => self.table.render(),
            Format::Csv => self.csv.as_ref().unwrap_or(&self.table).to_csv(),
        }
    }

    /// Writes `<command>.json` and the artifacts; returns the paths written.
    pub fn save(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let mut files = vec![(format!("{}.json", self.metadata.command), self.json_text())];
        files.extend(self.artifacts.iter().cloned());
        let mut written = Vec::new();
        for (name, text) in files {
            let path = dir.join(name);
            std::fs::File::create(&path)
                .and_then(|mut f| f.write_all(text.as_bytes()))
                .map_err(|e| CliError::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}
