//! Experiment implementations. Each returns a table with a fixed header.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use trotter_core::error_lab::{approx_phase_error, FitSource, TrotterSystem, WkFit};
use trotter_core::hamiltonian::{random_pauli_hamiltonian, HamiltonianFile};
use trotter_core::pauli::{nested_commutator_sums, PauliSum};
use trotter_core::qre::compare_estimates;
use trotter_core::shots::{estimate_phase_from_amplitude, fidelity_sweep, hadamard_amplitude};
use trotter_core::{Error as CoreError, RngSeed};

use crate::config::{Config, Experiment, HamiltonianSpec, RandomSpec};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    F(f64),
    U(u64),
    B(bool),
    S(String),
    Empty,
}

impl Cell {
    /// Floats carry 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::F(v) => format!("{v:.16e}"),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::U(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::U(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::U(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::F)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

macro_rules! row {
    ($($v:expr),* $(,)?) => { vec![$(Cell::from($v)),*] };
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

/// A unit of work and the random stream it consumed, if any.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct TaskRecord {
    pub index: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<RngSeed>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_sha256: Option<String>,
}

impl TaskRecord {
    fn new(index: usize, label: String, seed: Option<RngSeed>) -> Self {
        let seed_sha256 = seed.as_ref().map(|s| hex::encode(s.digest()));
        Self {
            index,
            label,
            seed,
            seed_sha256,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub table: Table,
    pub tasks: Vec<TaskRecord>,
    pub summary: Value,
}

pub fn header(exp: Experiment) -> &'static [&'static str] {
    match exp {
        Experiment::PhaseAccuracy => &["p_prime", "theta_tilde", "theta_exact", "rel_err"],
        Experiment::SizeSweep => &[
            "n_qubits", "instance", "n_terms", "p_prime", "theta_tilde", "theta_exact", "rel_err",
        ],
        Experiment::ErrorRatio => &[
            "n_qubits", "instance", "n_terms", "status", "w_commutator", "w_exact", "r_squared",
            "exponent_check", "w_quantum", "ratio_exact", "ratio_quantum",
        ],
        Experiment::Resources => &[
            "epsilon", "source", "w", "t_star", "t_max", "feasible", "b_star_real", "b_star", "q_star",
            "o_star",
        ],
        Experiment::Shots => &[
            "shots", "theta_tilde", "theta_estimate", "stderr", "ci95_low", "ci95_high", "excludes_zero",
            "x_estimate", "y_estimate",
        ],
        Experiment::FidelitySweep => &[
            "fidelity", "n_states", "mean_theta", "std_theta", "ci95_low", "ci95_high", "theta_eigenstate",
        ],
        Experiment::Opnorm => &["t", "delta_exact", "delta_sampled", "max_eigen_theta", "m_samples"],
        Experiment::FitWk => &[
            "source", "t", "error", "w", "exponent_check", "r_squared", "w_commutator",
        ],
        Experiment::CommutatorBound => &["b", "term", "coeff", "triple_l1", "double_l1", "weight"],
    }
}

/// Stream for task `index` of an experiment: `master_seed` with label
/// `<experiment>/<index>`.
pub fn task_seed(cfg: &Config, index: usize) -> RngSeed {
    RngSeed::new(cfg.master_seed(), format!("{}/{index}", cfg.experiment))
}

/// Stream label used for random Hamiltonians given by seed alone.
pub const HAMILTONIAN_STREAM: &str = "hamiltonian";

pub fn random_hamiltonian(n: usize, l: usize, seed: &RngSeed) -> Result<PauliSum, CliError> {
    random_pauli_hamiltonian(n, Some(l), seed).map_err(|e| match e {
        CoreError::TooManyTerms { .. } => CliError::Config(format!("hamiltonian.random.l: {e}")),
        other => other.into(),
    })
}

pub fn load_hamiltonian(spec: &HamiltonianSpec) -> Result<PauliSum, CliError> {
    match spec {
        HamiltonianSpec::Random(RandomSpec { n, l, seed }) => random_hamiltonian(
            *n,
            l.unwrap_or(n * n),
            &RngSeed::new(seed.unwrap_or(0), HAMILTONIAN_STREAM),
        ),
        HamiltonianSpec::File(path) => match HamiltonianFile::load(path) {
            Ok(f) => Ok(f.hamiltonian),
            Err(CoreError::Io(e)) => Err(CliError::Io(format!("cannot read {}: {e}", path.display()))),
            Err(e) => Err(CliError::Config(format!("hamiltonian.file: {e}"))),
        },
    }
}

fn system_for(h: PauliSum) -> Result<TrotterSystem, CliError> {
    if h.n_qubits() > trotter_core::DENSE_MATRIX_LIMIT {
        return Err(CliError::Config(format!(
            "hamiltonian: {} qubits exceeds the dense limit of {}",
            h.n_qubits(),
            trotter_core::DENSE_MATRIX_LIMIT
        )));
    }
    Ok(TrotterSystem::new(h)?)
}

fn check_k(system: &TrotterSystem, k: usize) -> Result<(), CliError> {
    let dim = system.spectrum().dim();
    if k >= dim {
        return Err(CliError::Config(format!("k: eigenindex {k} is out of range for dimension {dim}")));
    }
    Ok(())
}

struct Ctx<'a> {
    cfg: &'a Config,
}

impl Ctx<'_> {
    fn p(&self) -> u32 {
        self.cfg.p.unwrap_or(2)
    }
    fn s(&self) -> u32 {
        self.cfg.s.unwrap_or(1)
    }
    fn k(&self) -> usize {
        self.cfg.k.unwrap_or(0)
    }
    fn p_primes(&self) -> Vec<u32> {
        self.cfg.p_prime.as_ref().map(|v| v.to_vec()).unwrap_or_default()
    }
    fn times(&self, system: &TrotterSystem) -> Result<Vec<f64>, CliError> {
        let spec = self.cfg.time_spec.as_ref().expect("resolved config has a time spec");
        spec.times(system.norm())
            .map_err(|e| CliError::Config(format!("time_spec: {e}")))
    }
    fn system(&self) -> Result<TrotterSystem, CliError> {
        let spec = self.cfg.hamiltonian.as_ref().expect("resolved config has a Hamiltonian");
        system_for(load_hamiltonian(spec)?)
    }
    /// `(n, instance)` pairs of a size sweep, in task order.
    fn instances(&self) -> Vec<(usize, usize)> {
        let sizes = self.cfg.sizes.clone().unwrap_or_default();
        let count = self.cfg.instances.unwrap_or(1);
        sizes
            .into_iter()
            .flat_map(|n| (0..count).map(move |i| (n, i)))
            .collect()
    }
}

/// Runs a resolved configuration. Task results are computed in parallel and
/// collected in task order.
pub fn run_experiment(cfg: &Config) -> Result<ExperimentOutput, CliError> {
    let ctx = Ctx { cfg };
    let (rows, tasks, summary) = match cfg.experiment {
        Experiment::PhaseAccuracy => phase_accuracy(&ctx)?,
        Experiment::SizeSweep => size_sweep(&ctx)?,
        Experiment::ErrorRatio => error_ratio(&ctx)?,
        Experiment::Resources => resources(&ctx)?,
        Experiment::Shots => shots(&ctx)?,
        Experiment::FidelitySweep => fidelity(&ctx)?,
        Experiment::Opnorm => opnorm(&ctx)?,
        Experiment::FitWk => fit_wk(&ctx)?,
        Experiment::CommutatorBound => commutator_bound(&ctx)?,
    };
    Ok(ExperimentOutput {
        table: Table {
            header: header(cfg.experiment),
            rows,
        },
        tasks,
        summary,
    })
}

type Parts = (Vec<Vec<Cell>>, Vec<TaskRecord>, Value);

fn plain_tasks(cfg: &Config, n: usize) -> Vec<TaskRecord> {
    (0..n)
        .map(|i| TaskRecord::new(i, format!("{}/{i}", cfg.experiment), None))
        .collect()
}

fn relative_error(approx: f64, exact: f64) -> f64 {
    (approx - exact).abs() / exact.abs()
}

fn phase_accuracy(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    let k = ctx.k();
    check_k(&system, k)?;
    let t = ctx.times(&system)?[0];
    let psi = system.eigenstate(k)?;
    let target = system.schedule(ctx.p(), ctx.s(), t)?;
    let theta = system.phase_error(&target, &psi)?;
    let p_primes = ctx.p_primes();
    let rows = p_primes
        .par_iter()
        .map(|&pp| {
            let reference = system.schedule(pp, ctx.s(), t)?;
            let tilde = approx_phase_error(&target, &reference, &psi)?;
            Ok(row![pp, tilde, theta, relative_error(tilde, theta)])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let summary = json!({"spectral_norm": system.norm(), "t": t});
    Ok((rows, plain_tasks(ctx.cfg, p_primes.len()), summary))
}

fn sweep_system(ctx: &Ctx, index: usize, n: usize) -> Result<(TrotterSystem, RngSeed), CliError> {
    let seed = task_seed(ctx.cfg, index);
    let h = random_hamiltonian(n, n * n, &seed.derive(HAMILTONIAN_STREAM))?;
    let system = system_for(h)?;
    check_k(&system, ctx.k())?;
    Ok((system, seed))
}

fn size_sweep(ctx: &Ctx) -> Result<Parts, CliError> {
    let instances = ctx.instances();
    let p_primes = ctx.p_primes();
    let results = instances
        .par_iter()
        .enumerate()
        .map(|(index, &(n, inst))| {
            let (system, seed) = sweep_system(ctx, index, n)?;
            let t = ctx.times(&system)?[0];
            let psi = system.eigenstate(ctx.k())?;
            let target = system.schedule(ctx.p(), ctx.s(), t)?;
            let theta = system.phase_error(&target, &psi)?;
            let rows = p_primes
                .iter()
                .map(|&pp| {
                    let reference = system.schedule(pp, ctx.s(), t)?;
                    let tilde = approx_phase_error(&target, &reference, &psi)?;
                    Ok(row![n, inst, system.hamiltonian().len(), pp, tilde, theta, relative_error(tilde, theta)])
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((rows, TaskRecord::new(index, format!("n={n}/instance={inst}"), Some(seed))))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let (rows, tasks): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok((rows.into_iter().flatten().collect(), tasks, Value::Null))
}

fn error_ratio(ctx: &Ctx) -> Result<Parts, CliError> {
    let instances = ctx.instances();
    let pp = ctx.p_primes()[0];
    let results = instances
        .par_iter()
        .enumerate()
        .map(|(index, &(n, inst))| {
            let (system, seed) = sweep_system(ctx, index, n)?;
            let grid = ctx.times(&system)?;
            let l = system.hamiltonian().len();
            let w_c = trotter_core::pauli::commutator_bound(system.hamiltonian());
            let fits = system
                .fit_wk(2, ctx.k(), &grid, FitSource::Exact)
                .and_then(|e| Ok((e, system.fit_wk(2, ctx.k(), &grid, FitSource::ApproxPhase { p_prime: pp })?)));
            let row = match fits {
                Ok((exact, quantum)) => row![
                    n, inst, l, "ok", w_c, exact.w, exact.r_squared, exact.exponent_check, quantum.w,
                    w_c / exact.w, w_c / quantum.w,
                ],
                Err(CoreError::Unfittable(_) | CoreError::UndefinedPhase(_)) => row![
                    n, inst, l, "degenerate", w_c, None, None, None, None, None, None,
                ],
                Err(e) => return Err(e.into()),
            };
            Ok((row, TaskRecord::new(index, format!("n={n}/instance={inst}"), Some(seed))))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let (rows, tasks): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok((rows, tasks, Value::Null))
}

fn resources(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    check_k(&system, ctx.k())?;
    let grid = ctx.times(&system)?;
    let pp = ctx.p_primes()[0];
    let budgets = ctx.cfg.epsilon.as_ref().map(|e| e.to_vec()).unwrap_or_default();
    let reports = budgets
        .par_iter()
        .map(|&eps| Ok(compare_estimates(&system, ctx.k(), eps, pp, &grid)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut rows = Vec::new();
    for (eps, report) in budgets.iter().zip(&reports) {
        for (source, est) in [
            ("classical", &report.classical),
            ("quantum", &report.quantum),
            ("exact", &report.exact),
        ] {
            rows.push(row![
                *eps, source, est.w, est.t_star, est.t_max, est.feasible.unwrap_or(false), est.b_star_real,
                est.b_star, est.q_star, est.o_star,
            ]);
        }
    }
    let summary = json!({
        "spectral_norm": system.norm(),
        "n_terms": system.hamiltonian().len(),
        "measurement_operations": reports.first().map(|r| r.measurement_operations),
    });
    Ok((rows, plain_tasks(ctx.cfg, budgets.len()), summary))
}

fn shots(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    check_k(&system, ctx.k())?;
    let t = ctx.times(&system)?[0];
    let psi = system.eigenstate(ctx.k())?;
    let target = system.schedule(ctx.p(), ctx.s(), t)?;
    let reference = system.schedule(ctx.p_primes()[0], ctx.s(), t)?;
    let truth = hadamard_amplitude(&target, &reference, &psi)?;
    let counts = ctx.cfg.shots.as_ref().map(|s| s.to_vec()).unwrap_or_default();
    let rows = counts
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let est = estimate_phase_from_amplitude(truth, n, 0.5, &task_seed(ctx.cfg, i))?;
            Ok(row![
                n, truth.phase(), est.theta.estimate, est.theta.stderr, est.theta.ci95.0, est.theta.ci95.1,
                est.theta.excludes_zero(), est.x.estimate, est.y.estimate,
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let tasks = (0..counts.len())
        .map(|i| TaskRecord::new(i, format!("shots={}", counts[i]), Some(task_seed(ctx.cfg, i))))
        .collect();
    let summary = json!({"t": t, "amplitude": {"x": truth.x, "y": truth.y}});
    Ok((rows, tasks, summary))
}

fn fidelity(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    check_k(&system, ctx.k())?;
    let t = ctx.times(&system)?[0];
    let schedule = system.schedule(ctx.p(), ctx.s(), t)?;
    let theta = system.phase_error(&schedule, &system.eigenstate(ctx.k())?)?;
    let grid = ctx.cfg.f_grid.clone().unwrap_or_default();
    let seed = task_seed(ctx.cfg, 0);
    let states = ctx.cfg.m_samples.unwrap_or(100);
    let rows = fidelity_sweep(&system, &schedule, ctx.k(), &grid, states, &seed)?
        .into_iter()
        .map(|r| row![r.fidelity, r.n_states, r.mean_theta, r.std_theta, r.ci95.0, r.ci95.1, theta])
        .collect();
    let tasks = vec![TaskRecord::new(0, "fidelity-sweep".into(), Some(seed))];
    Ok((rows, tasks, json!({"t": t})))
}

fn opnorm(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    let times = ctx.times(&system)?;
    let m = ctx.cfg.m_samples.unwrap_or(64);
    let rows = times
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let schedule = system.schedule(ctx.p(), ctx.s(), t)?;
            let delta = system.operator_norm_exact(&schedule)?;
            let sampled = system.operator_norm_sampled(&schedule, m, &task_seed(ctx.cfg, i))?;
            let max_theta = system
                .eigenstate_phase_errors(&schedule)?
                .into_iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()));
            Ok(row![t, delta, sampled.estimate, max_theta, m])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let tasks = (0..times.len())
        .map(|i| TaskRecord::new(i, format!("t[{i}]"), Some(task_seed(ctx.cfg, i))))
        .collect();
    Ok((rows, tasks, Value::Null))
}

fn fit_rows(label: &str, fit: &WkFit) -> Vec<Vec<Cell>> {
    fit.t_grid
        .iter()
        .zip(&fit.errors)
        .map(|(&t, &e)| row![label, t, e, fit.w, fit.exponent_check, fit.r_squared, fit.w_commutator])
        .collect()
}

fn fit_wk(ctx: &Ctx) -> Result<Parts, CliError> {
    let system = ctx.system()?;
    check_k(&system, ctx.k())?;
    let grid = ctx.times(&system)?;
    let mut sources = vec![("exact".to_string(), FitSource::Exact)];
    sources.extend(
        ctx.p_primes()
            .into_iter()
            .map(|pp| (format!("p_prime={pp}"), FitSource::ApproxPhase { p_prime: pp })),
    );
    let fits = sources
        .iter()
        .map(|(_, source)| Ok(system.fit_wk(ctx.p(), ctx.k(), &grid, *source)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let rows = sources
        .iter()
        .zip(&fits)
        .flat_map(|((label, _), fit)| fit_rows(label, fit))
        .collect();
    let summary = Value::Array(
        sources
            .iter()
            .zip(&fits)
            .map(|((label, _), f)| {
                json!({"source": label, "w": f.w, "r_squared": f.r_squared, "exponent_check": f.exponent_check})
            })
            .collect(),
    );
    Ok((rows, plain_tasks(ctx.cfg, sources.len()), summary))
}

fn commutator_bound(ctx: &Ctx) -> Result<Parts, CliError> {
    let spec = ctx.cfg.hamiltonian.as_ref().expect("resolved config has a Hamiltonian");
    let h = load_hamiltonian(spec)?;
    let sums = nested_commutator_sums(&h);
    let rows: Vec<Vec<Cell>> = sums
        .iter()
        .map(|s| {
            let (coeff, pauli) = h.terms()[s.b];
            row![s.b, pauli.to_string().as_str(), coeff, s.triple.l1_norm(), s.double.l1_norm(), s.weight() / 12.0]
        })
        .collect();
    let total = sums.iter().map(|s| s.weight()).sum::<f64>() / 12.0;
    Ok((rows, plain_tasks(ctx.cfg, 1), json!({"w_commutator": total})))
}
