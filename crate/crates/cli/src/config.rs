//! Experiment configuration: parsing, per-experiment defaults and validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    PhaseAccuracy,
    SizeSweep,
    ErrorRatio,
    Resources,
    Shots,
    FidelitySweep,
    Opnorm,
    FitWk,
    CommutatorBound,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::PhaseAccuracy,
        Experiment::SizeSweep,
        Experiment::ErrorRatio,
        Experiment::Resources,
        Experiment::Shots,
        Experiment::FidelitySweep,
        Experiment::Opnorm,
        Experiment::FitWk,
        Experiment::CommutatorBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::PhaseAccuracy => "phase-accuracy",
            Experiment::SizeSweep => "size-sweep",
            Experiment::ErrorRatio => "error-ratio",
            Experiment::Resources => "resources",
            Experiment::Shots => "shots",
            Experiment::FidelitySweep => "fidelity-sweep",
            Experiment::Opnorm => "opnorm",
            Experiment::FitWk => "fit-wk",
            Experiment::CommutatorBound => "commutator-bound",
        }
    }

    /// Keys other than `experiment`, `output_dir` and `master_seed` that the
    /// experiment reads.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Experiment::PhaseAccuracy => &["hamiltonian", "p", "p_prime", "s", "time_spec", "k"],
            Experiment::SizeSweep => &["sizes", "instances", "p", "p_prime", "s", "time_spec", "k"],
            Experiment::ErrorRatio => &["sizes", "instances", "p_prime", "time_spec", "k"],
            Experiment::Resources => &["hamiltonian", "p_prime", "time_spec", "k", "epsilon"],
            Experiment::Shots => &["hamiltonian", "p", "p_prime", "s", "time_spec", "k", "shots"],
            Experiment::FidelitySweep => &["hamiltonian", "p", "s", "time_spec", "k", "m_samples", "f_grid"],
            Experiment::Opnorm => &["hamiltonian", "p", "s", "time_spec", "m_samples"],
            Experiment::FitWk => &["hamiltonian", "p", "p_prime", "time_spec", "k"],
            Experiment::CommutatorBound => &["hamiltonian"],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
                CliError::Config(format!("unknown experiment {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSpec {
    Random(RandomSpec),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogGrid {
    /// The grid starts at `pi / (min_divisor ||H||)`.
    pub min_divisor: f64,
    /// The grid ends at `pi / (max_divisor ||H||)`.
    pub max_divisor: f64,
    pub points: usize,
}

/// Evolution times, either absolute or relative to `pi / ||H||`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeSpec {
    Divisor(f64),
    T(f64),
    Grid(Vec<f64>),
    LogGrid(LogGrid),
}

impl TimeSpec {
    pub fn times(&self, norm: f64) -> Result<Vec<f64>, trotter_core::Error> {
        use trotter_core::error_lab::log_time_grid;
        use trotter_core::hamiltonian::time_from_norm;
        match self {
            TimeSpec::Divisor(d) => Ok(vec![time_from_norm(norm, *d)?]),
            TimeSpec::T(t) => Ok(vec![*t]),
            TimeSpec::Grid(g) => Ok(g.clone()),
            TimeSpec::LogGrid(g) => log_time_grid(
                time_from_norm(norm, g.min_divisor)?,
                time_from_norm(norm, g.max_divisor)?,
                g.points,
            ),
        }
    }
}

/// A single value or a list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Configuration as written by the user. After [`Config::resolve`] every key
/// the experiment reads is filled in and every other key is absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_prime: Option<OneOrMany<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_spec: Option<TimeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<OneOrMany<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<OneOrMany<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
}

pub const DEFAULT_MASTER_SEED: u64 = 0;
pub const DEFAULT_FIT_GRID: LogGrid = LogGrid {
    min_divisor: 4.0,
    max_divisor: 2.0,
    points: 10,
};
pub const DEFAULT_F_GRID: [f64; 8] = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0];
pub const DEFAULT_SHOTS: [u64; 5] = [100, 1_000, 10_000, 100_000, 999_999];
pub const DEFAULT_SIZES: [usize; 7] = [2, 3, 4, 5, 6, 7, 8];

fn config_err(key: &str, msg: impl fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {msg}"))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError::Config(e.inner().to_string())
            } else {
                CliError::Config(format!("{path}: {}", e.inner()))
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn present_keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut mark = |present: bool, key: &'static str| {
            if present {
                keys.push(key);
            }
        };
        mark(self.hamiltonian.is_some(), "hamiltonian");
        mark(self.sizes.is_some(), "sizes");
        mark(self.instances.is_some(), "instances");
        mark(self.p.is_some(), "p");
        mark(self.p_prime.is_some(), "p_prime");
        mark(self.s.is_some(), "s");
        mark(self.time_spec.is_some(), "time_spec");
        mark(self.k.is_some(), "k");
        mark(self.epsilon.is_some(), "epsilon");
        mark(self.shots.is_some(), "shots");
        mark(self.m_samples.is_some(), "m_samples");
        mark(self.f_grid.is_some(), "f_grid");
        keys
    }

    /// Fills in defaults, rejects keys the experiment does not read and
    /// checks value ranges. Relative Hamiltonian paths are taken relative to
    /// `base_dir` and stored absolute.
    pub fn resolve(mut self, base_dir: &Path) -> Result<Self, CliError> {
        let exp = self.experiment;
        let allowed = exp.keys();
        if let Some(key) = self.present_keys().into_iter().find(|k| !allowed.contains(k)) {
            return Err(config_err(key, format!("not used by experiment {exp}")));
        }
        let uses = |key: &str| allowed.contains(&key);
        let seed = *self.master_seed.get_or_insert(DEFAULT_MASTER_SEED);
        self.output_dir.get_or_insert_with(|| PathBuf::from("results").join(exp.name()));

        if uses("hamiltonian") {
            let spec = self
                .hamiltonian
                .get_or_insert_with(|| HamiltonianSpec::Random(RandomSpec { n: 4, l: None, seed: None }));
            match spec {
                HamiltonianSpec::Random(r) => {
                    if r.n == 0 || r.n > trotter_core::DENSE_MATRIX_LIMIT {
                        return Err(config_err(
                            "hamiltonian.random.n",
                            format!("must be between 1 and {}", trotter_core::DENSE_MATRIX_LIMIT),
                        ));
                    }
                    let l = *r.l.get_or_insert(r.n * r.n);
                    if l == 0 {
                        return Err(config_err("hamiltonian.random.l", "must be positive"));
                    }
                    r.seed.get_or_insert(seed);
                }
                HamiltonianSpec::File(path) => {
                    if path.is_relative() {
                        *path = base_dir.join(&*path);
                    }
                }
            }
        }
        if uses("sizes") {
            let sizes = self.sizes.get_or_insert_with(|| DEFAULT_SIZES.to_vec());
            if sizes.is_empty() || sizes.iter().any(|&n| n == 0 || n > trotter_core::DENSE_MATRIX_LIMIT) {
                return Err(config_err(
                    "sizes",
                    format!("need a non-empty list of sizes in 1..={}", trotter_core::DENSE_MATRIX_LIMIT),
                ));
            }
            let default_instances = if exp == Experiment::ErrorRatio { 10 } else { 5 };
            if *self.instances.get_or_insert(default_instances) == 0 {
                return Err(config_err("instances", "must be positive"));
            }
        }
        if uses("p") {
            let p = *self.p.get_or_insert(if exp == Experiment::Shots { 1 } else { 2 });
            if !(p == 1 || (p >= 2 && p % 2 == 0)) {
                return Err(config_err("p", format!("order {p} is not 1 or a positive even number")));
            }
            if exp == Experiment::FitWk && p < 2 {
                return Err(config_err("p", "fits need an even order"));
            }
        }
        if uses("p_prime") {
            let default = if exp == Experiment::PhaseAccuracy { vec![2, 4, 6] } else { vec![4] };
            let list = self.p_prime.get_or_insert(OneOrMany::Many(default)).to_vec();
            if list.is_empty() && exp != Experiment::FitWk {
                return Err(config_err("p_prime", "need at least one reference order"));
            }
            if let Some(bad) = list.iter().find(|&&q| q < 2 || q % 2 == 1) {
                return Err(config_err("p_prime", format!("reference order {bad} is not a positive even number")));
            }
            if matches!(exp, Experiment::Shots | Experiment::Resources) && list.len() != 1 {
                return Err(config_err("p_prime", "this experiment takes a single reference order"));
            }
        }
        if uses("s") && *self.s.get_or_insert(1) == 0 {
            return Err(config_err("s", "must be positive"));
        }
        if uses("time_spec") {
            let default = match exp {
                Experiment::Shots => TimeSpec::Divisor(1.0),
                Experiment::ErrorRatio | Experiment::Resources | Experiment::Opnorm | Experiment::FitWk => {
                    TimeSpec::LogGrid(DEFAULT_FIT_GRID)
                }
                _ => TimeSpec::Divisor(4.0),
            };
            let spec = self.time_spec.get_or_insert(default);
            check_time_spec(spec)?;
            let single = matches!(spec, TimeSpec::Divisor(_) | TimeSpec::T(_));
            let needs_grid = matches!(exp, Experiment::ErrorRatio | Experiment::Resources | Experiment::FitWk);
            if needs_grid && single {
                return Err(config_err("time_spec", "this experiment fits over a grid of times"));
            }
            let needs_single = matches!(
                exp,
                Experiment::PhaseAccuracy | Experiment::SizeSweep | Experiment::Shots | Experiment::FidelitySweep
            );
            if needs_single && !single {
                return Err(config_err("time_spec", "this experiment takes a single time"));
            }
        }
        if uses("k") {
            self.k.get_or_insert(0);
        }
        if uses("epsilon") {
            let eps = self.epsilon.get_or_insert(OneOrMany::Many(vec![0.01])).to_vec();
            if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
                return Err(config_err("epsilon", "need positive finite error budgets"));
            }
        }
        if uses("shots") {
            let shots = self.shots.get_or_insert(OneOrMany::Many(DEFAULT_SHOTS.to_vec())).to_vec();
            if shots.is_empty() || shots.iter().any(|&n| n < 2) {
                return Err(config_err("shots", "need shot counts of at least 2"));
            }
        }
        if uses("m_samples") {
            let default = if exp == Experiment::FidelitySweep { 100 } else { 64 };
            let m = *self.m_samples.get_or_insert(default);
            if m < 2 {
                return Err(config_err("m_samples", "need at least 2 samples"));
            }
        }
        if uses("f_grid") {
            let grid = self.f_grid.get_or_insert_with(|| DEFAULT_F_GRID.to_vec());
            if grid.is_empty() || grid.iter().any(|f| !(0.0..=1.0).contains(f)) {
                return Err(config_err("f_grid", "fidelities must lie in [0, 1]"));
            }
        }
        Ok(self)
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed.unwrap_or(DEFAULT_MASTER_SEED)
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("results").join(self.experiment.name()))
    }
}

fn check_time_spec(spec: &TimeSpec) -> Result<(), CliError> {
    let positive = |v: f64| v > 0.0 && v.is_finite();
    match spec {
        TimeSpec::Divisor(d) if !positive(*d) => Err(config_err("time_spec.divisor", "must be positive")),
        TimeSpec::T(t) if !positive(*t) => Err(config_err("time_spec.t", "must be positive")),
        TimeSpec::Grid(g) => {
            if g.is_empty() || !g.iter().all(|&t| positive(t)) || g.windows(2).any(|w| w[1] <= w[0]) {
                Err(config_err("time_spec.grid", "need strictly increasing positive times"))
            } else {
                Ok(())
            }
        }
        TimeSpec::LogGrid(g) => {
            if !positive(g.min_divisor) || !positive(g.max_divisor) || g.max_divisor >= g.min_divisor {
                Err(config_err("time_spec.log_grid", "need min_divisor > max_divisor > 0"))
            } else if g.points < 2 {
                Err(config_err("time_spec.log_grid.points", "need at least 2 points"))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}
