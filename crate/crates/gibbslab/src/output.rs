//! Writing reports: JSON objects carrying the manifest, or CSV tables preceded by a `#` line
//! holding it.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a command produced. `passed = false` means a property was falsified (exit status 1).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub passed: bool,
    pub table: Option<Table>,
    /// Merge the manifest into `result` instead of wrapping it, so the file can be read back
    /// by the library loaders.
    pub flat: bool,
}

impl Outcome {
    pub fn new(result: Value, passed: bool) -> Self {
        Outcome { result, passed, table: None, flat: false }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn flat(mut self) -> Self {
        self.flat = true;
        self
    }
}

pub fn pick_format(explicit: Option<Format>, out: Option<&Path>) -> Format {
    explicit.unwrap_or_else(|| match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        _ => Format::Json,
    })
}

pub fn render(outcome: &Outcome, manifest: &RunManifest, format: Format) -> Result<String> {
    let manifest_value = serde_json::to_value(manifest).expect("serializable");
    match format {
        Format::Json => {
            let doc = if outcome.flat {
                let mut obj = match &outcome.result {
                    Value::Object(m) => m.clone(),
                    other => Map::from_iter([("result".to_string(), other.clone())]),
                };
                obj.insert("passed".into(), Value::Bool(outcome.passed));
                obj.insert("manifest".into(), manifest_value);
                Value::Object(obj)
            } else {
                serde_json::json!({ "manifest": manifest_value, "passed": outcome.passed, "result": outcome.result })
            };
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let table = outcome
                .table
                .as_ref()
                .ok_or_else(|| CliError::Usage("this command has no tabular output; use --format json".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
                .expect("csv output is UTF-8");
            Ok(format!("# {}\n{body}", serde_json::to_string(&manifest_value).expect("serializable")))
        }
    }
}

pub fn write(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
