//! CSV emission and run manifests.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::error::CliError;
use crate::experiments::{Table, TaskRecord};

pub const TOOL: &str = "trotter-oracle";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const MANIFEST_FILE: &str = "manifest.json";

/// CSV bytes with `\n` line endings.
pub fn render_csv(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(table.header)?;
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.header.len());
        w.write_record(row.iter().map(|c| c.render()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Path relative to the manifest.
    pub file: PathBuf,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian_sha256: Option<String>,
    pub tasks: Vec<TaskRecord>,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<OutputRecord>,
    pub summary: Value,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("manifest {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifests always serialize");
        s.push('\n');
        s
    }
}

/// True when `text` is a run manifest rather than a plain config.
pub fn looks_like_manifest(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| v.get("tool").and_then(Value::as_str).map(|t| t == TOOL))
        .unwrap_or(false)
}
