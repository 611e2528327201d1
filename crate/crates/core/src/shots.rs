//! Shot-sampled Hadamard tests.
//!
//! The circuits are simulated at the amplitude level: the exact amplitude
//! `x + iy = <U_ref psi | U' psi>` is computed on state vectors and the
//! ancilla outcomes of the real and imaginary circuits are drawn as binomials
//! with zero-outcome probabilities `(1 + x)/2` and `(1 + y)/2`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{RotationSchedule, StateVector};
use crate::error::{Error, Result};
use crate::error_lab::{overlap, Reference, TrotterSystem};
use crate::seed::RngSeed;

/// Two-sided 95% normal quantile.
pub const CI95_Z: f64 = 1.96;

/// Estimated `|x + iy|^2` below this leaves the phase uncertainty undefined.
pub const MIN_MODULUS_SQUARED: f64 = 1e-8;

/// Real and imaginary parts of a Hadamard-test amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmplitudePair {
    pub x: f64,
    pub y: f64,
}

impl AmplitudePair {
    pub fn from_complex(a: Complex64) -> Self {
        Self { x: a.re, y: a.im }
    }

    pub fn modulus(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn phase(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// Sample estimate with a symmetric 95% confidence interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShotEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub shots: u64,
    pub ci95: (f64, f64),
}

impl ShotEstimate {
    pub fn new(estimate: f64, stderr: f64, shots: u64) -> Self {
        let half = CI95_Z * stderr;
        Self {
            estimate,
            stderr,
            shots,
            ci95: (estimate - half, estimate + half),
        }
    }

    /// True when zero lies outside the confidence interval.
    pub fn excludes_zero(&self) -> bool {
        self.ci95.0 > 0.0 || self.ci95.1 < 0.0
    }
}

/// Phase estimate with the two part estimates it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseShotEstimate {
    pub theta: ShotEstimate,
    pub x: ShotEstimate,
    pub y: ShotEstimate,
}

/// Exact amplitude `<U_ref psi | U' psi>` of the noiseless circuits.
pub fn hadamard_amplitude(
    target: &RotationSchedule,
    reference: &RotationSchedule,
    psi: &StateVector,
) -> Result<AmplitudePair> {
    Ok(AmplitudePair::from_complex(overlap(Reference::Approx(reference), target, psi)?))
}

/// Estimates `v` from `n` ancilla measurements with zero-outcome
/// probability `(1 + v)/2`: `est = (n0 - n1)/n`, `stderr = sqrt((1 - est^2)/n)`.
pub fn sample_part<R: Rng + ?Sized>(v: f64, n: u64, rng: &mut R) -> Result<ShotEstimate> {
    if n == 0 {
        return Err(Error::invalid("shots", 0.0, "need at least one shot"));
    }
    if !(v.abs() <= 1.0 + 1e-9) {
        return Err(Error::invalid("amplitude part", v, "must lie in [-1, 1]"));
    }
    let prob = ((1.0 + v) / 2.0).clamp(0.0, 1.0);
    let zeros = Binomial::new(n, prob)
        .expect("probability is clamped to [0, 1]")
        .sample(rng);
    let est = (2.0 * zeros as f64 - n as f64) / n as f64;
    let stderr = ((1.0 - est * est).max(0.0) / n as f64).sqrt();
    Ok(ShotEstimate::new(est, stderr, n))
}

/// Independent estimates of `x` and `y` with `n` shots each, drawn from the
/// streams `seed/x` and `seed/y`.
pub fn sample_amplitude(truth: AmplitudePair, n: u64, seed: &RngSeed) -> Result<(ShotEstimate, ShotEstimate)> {
    let x = sample_part(truth.x, n, &mut seed.derive("x").rng())?;
    let y = sample_part(truth.y, n, &mut seed.derive("y").rng())?;
    Ok((x, y))
}

/// `theta = atan2(y, x)` with
/// `delta_theta = sqrt(y^2 dx^2 + x^2 dy^2) / (x^2 + y^2)`, which is
/// `delta / |x + iy|` when both parts share `delta`.
pub fn phase_from_parts(x: ShotEstimate, y: ShotEstimate) -> Result<PhaseShotEstimate> {
    let r2 = x.estimate * x.estimate + y.estimate * y.estimate;
    if !(r2 >= MIN_MODULUS_SQUARED) {
        return Err(Error::UndefinedUncertainty(r2));
    }
    let theta = y.estimate.atan2(x.estimate);
    let var = y.estimate.powi(2) * x.stderr.powi(2) + x.estimate.powi(2) * y.stderr.powi(2);
    Ok(PhaseShotEstimate {
        theta: ShotEstimate::new(theta, var.sqrt() / r2, x.shots + y.shots),
        x,
        y,
    })
}

/// Phase estimate from a known amplitude. `real_fraction` of `total_shots`
/// goes to the real circuit, the rest to the imaginary one.
pub fn estimate_phase_from_amplitude(
    truth: AmplitudePair,
    total_shots: u64,
    real_fraction: f64,
    seed: &RngSeed,
) -> Result<PhaseShotEstimate> {
    if !(real_fraction > 0.0 && real_fraction < 1.0) {
        return Err(Error::invalid("real_fraction", real_fraction, "must lie in (0, 1)"));
    }
    let n_x = (total_shots as f64 * real_fraction).round() as u64;
    let n_y = total_shots.saturating_sub(n_x);
    let x = sample_part(truth.x, n_x, &mut seed.derive("x").rng())?;
    let y = sample_part(truth.y, n_y, &mut seed.derive("y").rng())?;
    phase_from_parts(x, y)
}

/// Shot-sampled `theta~` with the shots split evenly between the circuits.
pub fn estimate_phase_with_shots(
    target: &RotationSchedule,
    reference: &RotationSchedule,
    psi: &StateVector,
    total_shots: u64,
    seed: &RngSeed,
) -> Result<PhaseShotEstimate> {
    let truth = hadamard_amplitude(target, reference, psi)?;
    estimate_phase_from_amplitude(truth, total_shots, 0.5, seed)
}

/// `sqrt(f) |target> + sqrt(1 - f) |phi>` with `phi` a random state
/// orthogonal to `target`.
pub fn random_state_with_fidelity(target: &StateVector, f: f64, seed: &RngSeed) -> Result<StateVector> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::invalid("fidelity", f, "must lie in [0, 1]"));
    }
    if target.dim() < 2 {
        return Err(Error::invalid("dimension", target.dim() as f64, "needs an orthogonal complement"));
    }
    let mut phi = crate::dynamics::gaussian_vector(target.dim(), &mut seed.rng());
    // Two projection passes keep the overlap at rounding level.
    for _ in 0..2 {
        let c: Complex64 = target
            .amplitudes()
            .iter()
            .zip(&phi)
            .map(|(t, p)| t.conj() * p)
            .sum();
        for (p, t) in phi.iter_mut().zip(target.amplitudes()) {
            *p -= c * t;
        }
    }
    let norm = phi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let (a, b) = (f.sqrt(), (1.0 - f).sqrt() / norm);
    let amps = target
        .amplitudes()
        .iter()
        .zip(&phi)
        .map(|(t, p)| t * a + p * b)
        .collect();
    StateVector::from_amplitudes(target.n_qubits(), amps)
}

/// One fidelity of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityRow {
    pub fidelity: f64,
    pub mean_theta: f64,
    pub std_theta: f64,
    pub ci95: (f64, f64),
    pub n_states: usize,
}

/// Mean phase error over `states_per_point` random states of each fidelity
/// with eigenstate `k`. State `r` at grid index `i` uses the stream
/// `seed/i/r`.
pub fn fidelity_sweep(
    system: &TrotterSystem,
    schedule: &RotationSchedule,
    k: usize,
    f_grid: &[f64],
    states_per_point: usize,
    seed: &RngSeed,
) -> Result<Vec<FidelityRow>> {
    if states_per_point < 2 {
        return Err(Error::invalid("states_per_point", states_per_point as f64, "need at least 2"));
    }
    let target = system.eigenstate(k)?;
    let tasks: Vec<(usize, usize)> = (0..f_grid.len())
        .flat_map(|i| (0..states_per_point).map(move |r| (i, r)))
        .collect();
    let thetas = tasks
        .par_iter()
        .map(|&(i, r)| {
            let psi = random_state_with_fidelity(&target, f_grid[i], &seed.derive(i).derive(r))?;
            system.phase_error(schedule, &psi)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(f_grid
        .iter()
        .zip(thetas.chunks(states_per_point))
        .map(|(&f, chunk)| summarize(f, chunk))
        .collect())
}

fn summarize(fidelity: f64, values: &[f64]) -> FidelityRow {
    let n = values.len() as f64;
    // Shifted by the first value so identical samples give that value exactly.
    let first = values[0];
    let mean = first + values.iter().map(|v| v - first).sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let std = var.sqrt();
    let half = CI95_Z * std / n.sqrt();
    FidelityRow {
        fidelity,
        mean_theta: mean,
        std_theta: std,
        ci95: (mean - half, mean + half),
        n_states: values.len(),
    }
}
