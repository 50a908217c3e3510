//! Result tables, their CSV/JSON rendering and the provenance sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{ConfigSources, ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Command-level results such as fits; goes to the sidecar and JSON output.
    pub summary: Value,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Value::Null,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

/// JSON cell for a float; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn unix_time() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn render_csv(table: &Table, timestamp: bool) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    if timestamp {
        writeln!(buf, "# timestamp: {}", unix_time())?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&table.columns).map_err(io)?;
        for row in &table.rows {
            w.write_record(row.iter().map(cell)).map_err(io)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

pub fn render_json(command: &str, table: &Table, timestamp: bool) -> Result<Vec<u8>> {
    let mut doc = json!({
        "command": command,
        "columns": table.columns,
        "rows": table.rows,
        "summary": table.summary,
    });
    if timestamp {
        doc["timestamp"] = json!(unix_time());
    }
    let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

pub fn sidecar(command: &str, cfg: &ExperimentConfig, sources: &ConfigSources, table: &Table) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config_hash": cfg.hash(),
        "config": cfg,
        "sources": sources,
        "summary": table.summary,
    })
}

/// Writes the table to `cfg.out` (with a sidecar) or to stdout.
pub fn write_table(command: &str, cfg: &ExperimentConfig, sources: &ConfigSources, table: &Table) -> Result<()> {
    let stamp = !cfg.no_timestamp;
    let body = match cfg.format {
        OutputFormat::Csv => render_csv(table, stamp)?,
        OutputFormat::Json => render_json(command, table, stamp)?,
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let meta = serde_json::to_vec_pretty(&sidecar(command, cfg, sources, table))
                .map_err(|e| Error::Io(e.to_string()))?;
            let meta_path = sidecar_path(path);
            std::fs::write(&meta_path, meta).map_err(|e| Error::Io(format!("{}: {e}", meta_path.display())))?;
        }
        None => std::io::stdout().write_all(&body)?,
    }
    Ok(())
}
