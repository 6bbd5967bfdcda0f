use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Version of the JSON envelope described by `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Obj,
}

/// Result of one command, ready to be rendered.
pub struct Outcome {
    pub command: &'static str,
    pub passed: bool,
    pub report: Value,
    /// Rows for `--format csv`, header first.
    pub csv: Option<Vec<Vec<String>>>,
    pub summary: String,
}

impl Outcome {
    pub fn envelope(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "verdict": if self.passed { "pass" } else { "fail" },
            "report": self.report,
        })
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.envelope())? + "\n"),
            Format::Csv => {
                let rows = self
                    .csv
                    .as_ref()
                    .ok_or_else(|| CliError::Usage(format!("`{}` has no CSV output", self.command)))?;
                csv_string(rows)
            }
            Format::Obj => Err(CliError::Usage("OBJ output is only produced by `mesh`".into())),
        }
    }
}

pub fn csv_string(rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(|e| CliError::Csv(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Csv(e.to_string()))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let err = |e: std::io::Error| CliError::io(path.display().to_string(), e);
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

pub fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
