//! Pauli-sum files.
//!
//! ```text
//! {
//!   "n_qubits": 2,
//!   "terms": [
//!     {"pauli": "XZ", "coeff": 1.0000000000000000e0},
//!     {"pauli": "IY", "coeff": -2.5000000000000000e-1}
//!   ],
//!   "metadata": {"molecule": "H2"}
//! }
//! ```
//!
//! Character `q` of each string acts on qubit `q`. The writer emits exactly
//! this layout (one term per line, 17 significant digits) so that saving a
//! loaded file reproduces it byte for byte. `metadata` is optional.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum, MAX_QUBITS};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n_qubits: usize,
    terms: Vec<FileTerm>,
    #[serde(default)]
    metadata: Map<String, Value>,
}

/// One `{"pauli": ..., "coeff": ...}` entry.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileTerm {
    pub pauli: String,
    pub coeff: f64,
}

/// A loaded Hamiltonian together with its free-form metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFile {
    pub hamiltonian: PauliSum,
    pub metadata: Map<String, Value>,
}

impl HamiltonianFile {
    pub fn new(hamiltonian: PauliSum) -> Self {
        Self {
            hamiltonian,
            metadata: Map::new(),
        }
    }

    /// Parses file contents. `source` names the file in diagnostics.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let fail = |line: usize, message: String| Error::HamiltonianFormat {
            path: source.to_string(),
            line,
            message,
        };
        let raw: RawFile =
            serde_json::from_str(text).map_err(|e| fail(e.line(), format!("malformed file: {e}")))?;

        if raw.n_qubits == 0 || raw.n_qubits > MAX_QUBITS {
            return Err(fail(
                key_line(text, "n_qubits"),
                format!("n_qubits must be between 1 and {MAX_QUBITS}, found {}", raw.n_qubits),
            ));
        }
        let mut first_seen: HashMap<&str, usize> = HashMap::new();
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (i, term) in raw.terms.iter().enumerate() {
            let line = term_line(text, i);
            let pauli = PauliString::parse(&term.pauli).map_err(|e| match e {
                Error::InvalidPauliChar { ch, position } => fail(
                    line,
                    format!("invalid character {ch:?} at position {position} in {:?}", term.pauli),
                ),
                other => fail(line, format!("bad Pauli string {:?}: {other}", term.pauli)),
            })?;
            if pauli.n_qubits() != raw.n_qubits {
                return Err(fail(
                    line,
                    format!(
                        "width mismatch: {:?} has {} qubits, expected {}",
                        term.pauli,
                        pauli.n_qubits(),
                        raw.n_qubits
                    ),
                ));
            }
            if let Some(prev) = first_seen.insert(term.pauli.as_str(), line) {
                return Err(fail(
                    line,
                    format!("duplicate term {:?} (first on line {prev})", term.pauli),
                ));
            }
            terms.push((term.coeff, pauli));
        }
        let hamiltonian = PauliSum::new(raw.n_qubits, terms).map_err(|e| fail(1, e.to_string()))?;
        Ok(Self {
            hamiltonian,
            metadata: raw.metadata,
        })
    }

    pub fn to_canonical_string(&self) -> String {
        let h = &self.hamiltonian;
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"n_qubits\": {},", h.n_qubits());
        if h.is_empty() {
            out.push_str("  \"terms\": []");
        } else {
            out.push_str("  \"terms\": [\n");
            for (i, (coeff, pauli)) in h.terms().iter().enumerate() {
                let sep = if i + 1 == h.len() { "" } else { "," };
                let _ = writeln!(out, "    {{\"pauli\": \"{pauli}\", \"coeff\": {coeff:.16e}}}{sep}");
            }
            out.push_str("  ]");
        }
        if !self.metadata.is_empty() {
            let meta = serde_json::to_string(&self.metadata).expect("JSON values always serialize");
            let _ = write!(out, ",\n  \"metadata\": {meta}");
        }
        out.push_str("\n}\n");
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_canonical_string())?;
        Ok(())
    }
}

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSum> {
    Ok(HamiltonianFile::load(path)?.hamiltonian)
}

pub fn save_hamiltonian(h: &PauliSum, path: impl AsRef<Path>) -> Result<()> {
    HamiltonianFile::new(h.clone()).save(path)
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].matches('\n').count() + 1
}

fn key_line(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\""))
        .map(|pos| line_of(text, pos))
        .unwrap_or(1)
}

/// Line holding the `index`-th `"pauli"` key after the `"terms"` key.
fn term_line(text: &str, index: usize) -> usize {
    let Some(start) = text.find("\"terms\"") else {
        return 1;
    };
    let mut from = start;
    for i in 0..=index {
        match text[from..].find("\"pauli\"") {
            Some(pos) if i == index => return line_of(text, from + pos),
            Some(pos) => from += pos + 1,
            None => break,
        }
    }
    line_of(text, start)
}
