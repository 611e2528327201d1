mod common;

use common::*;
use std::fs;
use trotter_core::hamiltonian::{load_hamiltonian, save_hamiltonian, HamiltonianFile};
use trotter_core::pauli::PauliSum;
use trotter_core::Error;

#[test]
fn save_load_save_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let h = weighted_sum(5, 20, 7);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    save_hamiltonian(&h, &a).unwrap();
    let loaded = load_hamiltonian(&a).unwrap();
    assert_eq!(loaded, h);
    save_hamiltonian(&loaded, &b).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn metadata_survives_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
  "n_qubits": 4,
  "terms": [
    {"pauli": "ZIII", "coeff": -0.24274280046588},
    {"pauli": "XXYY", "coeff": 0.0453222020206},
    {"pauli": "IIIZ", "coeff": 0.1777128746}
  ],
  "metadata": {"molecule": "H2O", "basis": "sto-3g", "bond_length": 0.9584, "frozen": [0, 1]}
}
"#;
    let path = dir.path().join("h2o.json");
    fs::write(&path, text).unwrap();
    let file = HamiltonianFile::load(&path).unwrap();
    assert_eq!(file.hamiltonian.len(), 3);
    assert_eq!(file.metadata["molecule"], "H2O");
    let out = dir.path().join("out.json");
    file.save(&out).unwrap();
    let again = HamiltonianFile::load(&out).unwrap();
    assert_eq!(again, file);
    again.save(dir.path().join("out2.json")).unwrap();
    assert_eq!(fs::read(&out).unwrap(), fs::read(dir.path().join("out2.json")).unwrap());
}

#[test]
fn diagnostics_name_the_line() {
    let cases = [
        (
            "{\n  \"n_qubits\": 2,\n  \"terms\": [\n    {\"pauli\": \"XZ\", \"coeff\": 1.0},\n    {\"pauli\": \"XZ\", \"coeff\": 2.0}\n  ]\n}\n",
            5,
            "duplicate term",
        ),
        (
            "{\n  \"n_qubits\": 2,\n  \"terms\": [\n    {\"pauli\": \"XZZ\", \"coeff\": 1.0}\n  ]\n}\n",
            4,
            "width mismatch",
        ),
        (
            "{\n  \"n_qubits\": 2,\n  \"terms\": [\n    {\"pauli\": \"XQ\", \"coeff\": 1.0}\n  ]\n}\n",
            4,
            "invalid character",
        ),
    ];
    for (text, want_line, prefix) in cases {
        match HamiltonianFile::parse(text, "h.json") {
            Err(Error::HamiltonianFormat { line, message, .. }) => {
                assert_eq!(line, want_line, "{message}");
                assert!(message.starts_with(prefix), "{message}");
            }
            other => panic!("expected a format error, got {other:?}"),
        }
    }
}

#[test]
fn loaded_file_gives_same_dense_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let h = PauliSum::from_labels(&[("XY", 0.5), ("ZZ", -1.25), ("YI", 1.0 / 3.0)]).unwrap();
    let path = dir.path().join("h.json");
    save_hamiltonian(&h, &path).unwrap();
    let back = load_hamiltonian(&path).unwrap();
    assert_eq!(max_diff(&kron_sum(&back), &kron_sum(&h)), 0.0);
}
