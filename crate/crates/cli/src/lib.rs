//! Reproducible experiment runner for the Trotter error laboratory.
//!
//! A run reads a JSON [`Config`], fills in every default, computes one CSV
//! table and writes it next to a [`RunManifest`] recording the resolved
//! config, per-task seeds and output digests. Running a manifest again
//! reproduces the CSV byte for byte.

pub mod config;
pub mod describe;
pub mod error;
pub mod experiments;
pub mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use trotter_core::hamiltonian::{random_pauli_hamiltonian, HamiltonianFile};
use trotter_core::RngSeed;

pub use config::{Config, Experiment};
pub use error::CliError;
pub use manifest::RunManifest;

use experiments::{load_hamiltonian, run_experiment, HAMILTONIAN_STREAM};
use manifest::{render_csv, sha256_hex, OutputRecord, MANIFEST_FILE, TOOL, VERSION};

/// Where a run wrote its artifacts.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub manifest_path: PathBuf,
    pub csv_path: PathBuf,
    pub manifest: RunManifest,
}

/// Reads a config or a manifest and returns the resolved config.
pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    if manifest::looks_like_manifest(&text) {
        return RunManifest::load(path)?.config.resolve(base);
    }
    Config::parse(&text)?.resolve(base)
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Config("--jobs: must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// CSV bytes of a resolved config, without touching the file system beyond
/// reading the Hamiltonian.
pub fn compute(cfg: &Config, jobs: Option<usize>) -> Result<(Vec<u8>, experiments::ExperimentOutput), CliError> {
    let out = in_pool(jobs, || run_experiment(cfg))??;
    Ok((render_csv(&out.table)?, out))
}

/// Runs a config (or re-runs a manifest) and writes `<experiment>.csv` and
/// `manifest.json` into the output directory.
pub fn run(config_path: &Path, jobs: Option<usize>, output: Option<&Path>) -> Result<RunOutcome, CliError> {
    let mut cfg = load_config(config_path)?;
    if let Some(dir) = output {
        cfg.output_dir = Some(dir.to_path_buf());
    }
    let dir = cfg.output_dir();
    let start = Instant::now();
    let (csv, out) = compute(&cfg, jobs)?;
    let elapsed = start.elapsed().as_secs_f64();

    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let csv_name = PathBuf::from(format!("{}.csv", cfg.experiment));
    let csv_path = dir.join(&csv_name);
    fs::write(&csv_path, &csv).map_err(|e| CliError::Io(format!("cannot write {}: {e}", csv_path.display())))?;

    let hamiltonian_sha256 = match &cfg.hamiltonian {
        Some(spec) => Some(sha256_hex(
            HamiltonianFile::new(load_hamiltonian(spec)?).to_canonical_string().as_bytes(),
        )),
        None => None,
    };
    let manifest = RunManifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: cfg,
        hamiltonian_sha256,
        tasks: out.tasks,
        wall_clock_seconds: elapsed,
        outputs: vec![OutputRecord {
            file: csv_name,
            sha256: sha256_hex(&csv),
            bytes: csv.len(),
        }],
        summary: out.summary,
    };
    let manifest_path = dir.join(MANIFEST_FILE);
    fs::write(&manifest_path, manifest.to_json())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", manifest_path.display())))?;
    Ok(RunOutcome {
        manifest_path,
        csv_path,
        manifest,
    })
}

/// Recomputes a manifest's outputs in memory and compares digests.
/// Returns the mismatching file names.
pub fn verify(manifest_path: &Path, jobs: Option<usize>) -> Result<Vec<PathBuf>, CliError> {
    let manifest = RunManifest::load(manifest_path)?;
    let cfg = manifest.config.clone().resolve(manifest_path.parent().unwrap_or(Path::new(".")))?;
    let (csv, _) = compute(&cfg, jobs)?;
    let digest = sha256_hex(&csv);
    Ok(manifest
        .outputs
        .iter()
        .filter(|o| o.sha256 != digest)
        .map(|o| o.file.clone())
        .collect())
}

/// Writes a random Hamiltonian file; the same `(n, l, seed)` in a config's
/// `hamiltonian.random` produces the same operator.
pub fn gen_hamiltonian(n: usize, l: Option<usize>, seed: u64, out: &Path) -> Result<(), CliError> {
    let l = l.unwrap_or(n * n);
    let h = random_pauli_hamiltonian(n, Some(l), &RngSeed::new(seed, HAMILTONIAN_STREAM)).map_err(|e| {
        match e {
            trotter_core::Error::TooManyTerms { .. } => CliError::Config(format!("--l: {e}")),
            trotter_core::Error::TooManyQubits(_) => CliError::Config(format!("--n: {e}")),
            other => other.into(),
        }
    })?;
    let mut file = HamiltonianFile::new(h);
    file.metadata.insert("generator".into(), "random_pauli".into());
    file.metadata.insert("n".into(), n.into());
    file.metadata.insert("l".into(), l.into());
    file.metadata.insert("seed".into(), seed.into());
    file.save(out).map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))
}
