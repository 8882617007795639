use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Record of how a result was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub artifact: String,
    pub version: String,
    pub subcommand: String,
    /// Every resolved setting, defaults included.
    pub config: Value,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub started_unix_ms: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finished_unix_ms: Option<u128>,
}

impl Provenance {
    pub fn new(subcommand: &str, config: Value, seed: u64) -> Self {
        Provenance {
            artifact: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config,
            seed,
            started_unix_ms: None,
            finished_unix_ms: None,
        }
    }
}

pub fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub payload: Value,
    pub provenance: Provenance,
}

/// Rows of a CSV table; cells are already formatted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// What a subcommand produced: JSON always, a table when the result is tabular.
#[derive(Debug, Clone)]
pub struct Report {
    pub payload: Value,
    pub table: Option<Table>,
}

pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn to_json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Writes the envelope as pretty JSON, or the table as CSV plus a
/// `.meta.json` envelope next to it.
pub fn emit(envelope: &ResultEnvelope, table: Option<&Table>, csv: bool, path: Option<&Path>) -> Result<(), CliError> {
    if csv {
        let table = table.ok_or_else(|| CliError::Usage("this result has no CSV form; use --format json".into()))?;
        write_text(path, &table.to_csv()?)?;
        if let Some(p) = path {
            write_text(
                Some(&meta_path(p)),
                &(serde_json::to_string_pretty(envelope).expect("serializable") + "\n"),
            )?;
        }
        Ok(())
    } else {
        write_text(
            path,
            &(serde_json::to_string_pretty(envelope).expect("serializable") + "\n"),
        )
    }
}

pub fn load_envelope(path: impl AsRef<Path>) -> Result<ResultEnvelope, CliError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Table, CliError> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let header = r.headers()?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
        .collect::<Result<_, _>>()?;
    Ok(Table { header, rows })
}
