//! Simulation-error metrics for product formulas.
//!
//! All overlaps follow one convention: for a reference evolution `V` and a
//! product formula `U'`, the amplitude is `<V psi | U' psi>` and the phase
//! error is its argument on the principal branch. With `V` the exact
//! evolution this is the phase error, with `V` a higher-order product formula
//! it is the approximate phase error that a Hadamard test can measure.

mod fit;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    apply_schedule, effective_spectrum, exact_eigenpairs, exact_evolve, match_eigenpair,
    schedule_unitary, trotter_schedule, RotationSchedule, SpectralData, StateVector,
};
use crate::error::{Error, Result};
use crate::hamiltonian::time_from_norm;
use crate::linalg::spectral_norm_of;
use crate::pauli::{commutator_bound, PauliSum};
use crate::seed::RngSeed;

pub use fit::{default_fit_grid, fit_power_law, log_time_grid, PowerLawFit, DEGENERATE_ERROR};

/// Amplitudes with a smaller modulus do not define a phase.
pub const MIN_AMPLITUDE: f64 = 1e-13;

/// What the product formula is compared against.
#[derive(Clone, Copy, Debug)]
pub enum Reference<'a> {
    /// Exact evolution from the spectrum.
    Exact(&'a SpectralData),
    /// A (usually higher-order) product formula.
    Approx(&'a RotationSchedule),
}

/// `<V psi | U' psi>` for the reference `V` and the schedule `U'`.
pub fn overlap(reference: Reference<'_>, target: &RotationSchedule, psi: &StateVector) -> Result<Complex64> {
    let evolved = apply_schedule(target, psi)?;
    let reference_state = match reference {
        Reference::Exact(spec) => exact_evolve(spec, target.time, psi)?,
        Reference::Approx(r) => {
            if (r.time - target.time).abs() > 1e-12 * target.time.abs().max(1.0) {
                return Err(Error::invalid("reference time", r.time, "must equal the target time"));
            }
            apply_schedule(r, psi)?
        }
    };
    reference_state.inner(&evolved)
}

/// Principal argument of `amplitude`, refusing near-zero moduli.
pub fn phase_of(amplitude: Complex64) -> Result<f64> {
    let r = amplitude.norm();
    if !(r >= MIN_AMPLITUDE) {
        return Err(Error::UndefinedPhase(r));
    }
    Ok(amplitude.arg())
}

/// `theta = arg <psi| U^dag(t) U'(t) |psi>`.
pub fn phase_error(spec: &SpectralData, schedule: &RotationSchedule, psi: &StateVector) -> Result<f64> {
    phase_of(overlap(Reference::Exact(spec), schedule, psi)?)
}

/// `theta~ = arg <psi| U_ref^dag(t) U'(t) |psi>`; no diagonalization.
pub fn approx_phase_error(
    target: &RotationSchedule,
    reference: &RotationSchedule,
    psi: &StateVector,
) -> Result<f64> {
    phase_of(overlap(Reference::Approx(reference), target, psi)?)
}

/// `f = 1 - |<V psi|U' psi>|^2`, equal to `1 - x^2 - y^2` for the real and
/// imaginary parts of the amplitude.
pub fn fidelity_error(reference: Reference<'_>, target: &RotationSchedule, psi: &StateVector) -> Result<f64> {
    let a = overlap(reference, target, psi)?;
    Ok((1.0 - a.re * a.re - a.im * a.im).clamp(0.0, 1.0))
}

/// Largest singular value of `U(t) - U'(t)`.
pub fn operator_norm_exact(spec: &SpectralData, schedule: &RotationSchedule) -> Result<f64> {
    let u = spec.evolution_operator(schedule.time);
    let v = schedule_unitary(schedule)?;
    Ok(spectral_norm_of(&(u - v)))
}

/// Sampled operator-norm estimate over Haar-random states.
#[derive(Clone, Debug, Serialize)]
pub struct SampledNorm {
    /// `max |theta|` over all sampled states.
    pub estimate: f64,
    /// `prefix_max[m]` is the estimate after the first `m + 1` states.
    pub prefix_max: Vec<f64>,
}

/// `max_{m <= M} |theta_{psi_m}|` over Haar-random states; state `m` is drawn
/// from the stream `seed/m`.
pub fn operator_norm_sampled(
    spec: &SpectralData,
    schedule: &RotationSchedule,
    m_samples: usize,
    seed: &RngSeed,
) -> Result<SampledNorm> {
    if m_samples == 0 {
        return Err(Error::invalid("M", 0.0, "need at least one state"));
    }
    let phases = (0..m_samples)
        .into_par_iter()
        .map(|m| {
            let psi = StateVector::haar_random(spec.n_qubits, &seed.derive(m))?;
            Ok(phase_error(spec, schedule, &psi)?.abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut prefix_max = Vec::with_capacity(m_samples);
    let mut best = 0.0f64;
    for p in phases {
        best = best.max(p);
        prefix_max.push(best);
    }
    Ok(SampledNorm {
        estimate: best,
        prefix_max,
    })
}

/// `|lambda_k - lambda'_k|` together with the matched effective eigenpair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrotterErrorDetail {
    pub error: f64,
    pub exact_eigenvalue: f64,
    pub effective_eigenvalue: f64,
    pub effective_index: usize,
    pub overlap_squared: f64,
}

/// Which errors `fit_wk` fits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitSource {
    /// `eps^TS_k` from the effective spectrum.
    Exact,
    /// `|theta~| / t` on the exact eigenstate with a reference of order `p_prime`.
    ApproxPhase { p_prime: u32 },
}

/// Fitted Trotter-error constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WkFit {
    pub order: u32,
    pub eigenindex: usize,
    pub source: FitSource,
    pub w: f64,
    pub exponent_check: f64,
    pub r_squared: f64,
    pub t_grid: Vec<f64>,
    pub errors: Vec<f64>,
    /// Commutator bound, for second order.
    pub w_commutator: Option<f64>,
    /// Fixed-slope constant of `Delta_p / t`.
    pub w_operator: Option<f64>,
}

/// Per-configuration metrics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub order: u32,
    pub n_steps: u32,
    pub time: f64,
    pub eigenindex: usize,
    pub trotter_error: f64,
    pub phase_error: f64,
    pub approx_phase_error: Option<f64>,
    pub phase_error_energy: f64,
    pub fidelity_error: f64,
    pub operator_norm: f64,
    pub sampled_norm: Option<f64>,
}

/// A Hamiltonian with its exact spectrum, shared by all metrics.
#[derive(Clone, Debug)]
pub struct TrotterSystem {
    h: PauliSum,
    spectrum: SpectralData,
    norm: f64,
}

impl TrotterSystem {
    pub fn new(h: PauliSum) -> Result<Self> {
        let spectrum = exact_eigenpairs(&h)?;
        let norm = spectrum.spectral_norm();
        Ok(Self { h, spectrum, norm })
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.h
    }

    pub fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }

    /// Spectral norm `||H||`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `pi / (divisor ||H||)`.
    pub fn time(&self, divisor: f64) -> Result<f64> {
        time_from_norm(self.norm, divisor)
    }

    pub fn default_grid(&self) -> Result<Vec<f64>> {
        default_fit_grid(self.norm)
    }

    pub fn eigenstate(&self, k: usize) -> Result<StateVector> {
        self.spectrum.eigenstate(k)
    }

    pub fn schedule(&self, p: u32, n_steps: u32, t: f64) -> Result<RotationSchedule> {
        trotter_schedule(&self.h, p, n_steps, t)
    }

    pub fn trotter_error(&self, p: u32, n_steps: u32, t: f64, k: usize) -> Result<TrotterErrorDetail> {
        let t_max = time_from_norm(self.norm, 1.0)?;
        if !(t > 0.0) || t > t_max * (1.0 + 1e-12) {
            return Err(Error::invalid("t", t, "must lie in (0, pi/||H||]"));
        }
        let u = schedule_unitary(&self.schedule(p, n_steps, t)?)?;
        let eff = effective_spectrum(&u, t)?;
        let target = self.eigenstate(k)?;
        let (j, overlap_squared) = match_eigenpair(&target, &eff)?;
        let exact = self.spectrum.eigenvalues[k];
        let effective = eff.eigenvalues[j];
        Ok(TrotterErrorDetail {
            error: (exact - effective).abs(),
            exact_eigenvalue: exact,
            effective_eigenvalue: effective,
            effective_index: j,
            overlap_squared,
        })
    }

    pub fn phase_error(&self, schedule: &RotationSchedule, psi: &StateVector) -> Result<f64> {
        phase_error(&self.spectrum, schedule, psi)
    }

    pub fn fidelity_error(&self, schedule: &RotationSchedule, psi: &StateVector) -> Result<f64> {
        fidelity_error(Reference::Exact(&self.spectrum), schedule, psi)
    }

    pub fn operator_norm_exact(&self, schedule: &RotationSchedule) -> Result<f64> {
        operator_norm_exact(&self.spectrum, schedule)
    }

    pub fn operator_norm_sampled(
        &self,
        schedule: &RotationSchedule,
        m_samples: usize,
        seed: &RngSeed,
    ) -> Result<SampledNorm> {
        operator_norm_sampled(&self.spectrum, schedule, m_samples, seed)
    }

    /// `theta_{lambda_k}` for every eigenstate, from one dense unitary.
    pub fn eigenstate_phase_errors(&self, schedule: &RotationSchedule) -> Result<Vec<f64>> {
        let u = schedule_unitary(schedule)?;
        let v = &self.spectrum.eigenvectors;
        let uv = u * v;
        self.spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, lambda)| {
                let diag = v.column(k).dotc(&uv.column(k));
                phase_of(Complex64::from_polar(1.0, lambda * schedule.time) * diag)
            })
            .collect()
    }

    /// Error entering the fit at one time.
    pub fn fit_error(&self, p: u32, k: usize, t: f64, source: FitSource) -> Result<f64> {
        match source {
            FitSource::Exact => Ok(self.trotter_error(p, 1, t, k)?.error),
            FitSource::ApproxPhase { p_prime } => {
                let psi = self.eigenstate(k)?;
                let target = self.schedule(p, 1, t)?;
                let reference = self.schedule(p_prime, 1, t)?;
                Ok(approx_phase_error(&target, &reference, &psi)?.abs() / t)
            }
        }
    }

    /// Fixed-slope fit of `err = W t^p` over `grid`; adds `W_C` for `p = 2`.
    pub fn fit_wk(&self, p: u32, k: usize, grid: &[f64], source: FitSource) -> Result<WkFit> {
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("t grid", f64::NAN, "must be strictly increasing"));
        }
        let errors = grid
            .par_iter()
            .map(|&t| self.fit_error(p, k, t, source))
            .collect::<Result<Vec<f64>>>()?;
        let fit = fit_power_law(grid, &errors, p as f64)?;
        Ok(WkFit {
            order: p,
            eigenindex: k,
            source,
            w: fit.w,
            exponent_check: fit.free_slope,
            r_squared: fit.r_squared,
            t_grid: grid.to_vec(),
            errors,
            w_commutator: (p == 2).then(|| commutator_bound(&self.h)),
            w_operator: None,
        })
    }

    /// Fixed-slope constant of `Delta_p(t) / t` over `grid`.
    pub fn operator_constant(&self, p: u32, grid: &[f64]) -> Result<f64> {
        let scaled = grid
            .par_iter()
            .map(|&t| Ok(self.operator_norm_exact(&self.schedule(p, 1, t)?)? / t))
            .collect::<Result<Vec<f64>>>()?;
        Ok(fit_power_law(grid, &scaled, p as f64)?.w)
    }

    /// All single-configuration metrics on eigenstate `k`.
    pub fn error_report(
        &self,
        p: u32,
        n_steps: u32,
        t: f64,
        k: usize,
        p_prime: Option<u32>,
        sampling: Option<(usize, &RngSeed)>,
    ) -> Result<ErrorReport> {
        let schedule = self.schedule(p, n_steps, t)?;
        let psi = self.eigenstate(k)?;
        let theta = self.phase_error(&schedule, &psi)?;
        let approx = p_prime
            .map(|pp| {
                let reference = self.schedule(pp, n_steps, t)?;
                approx_phase_error(&schedule, &reference, &psi)
            })
            .transpose()?;
        let sampled = sampling
            .map(|(m, seed)| Ok::<_, Error>(self.operator_norm_sampled(&schedule, m, seed)?.estimate))
            .transpose()?;
        Ok(ErrorReport {
            order: p,
            n_steps,
            time: t,
            eigenindex: k,
            trotter_error: self.trotter_error(p, n_steps, t, k)?.error,
            phase_error: theta,
            approx_phase_error: approx,
            phase_error_energy: theta.abs() / t,
            fidelity_error: self.fidelity_error(&schedule, &psi)?,
            operator_norm: self.operator_norm_exact(&schedule)?,
            sampled_norm: sampled,
        })
    }
}

/// `eps^TS_k` for a Hamiltonian given directly.
pub fn trotter_error(h: &PauliSum, p: u32, n_steps: u32, t: f64, k: usize) -> Result<f64> {
    Ok(TrotterSystem::new(h.clone())?.trotter_error(p, n_steps, t, k)?.error)
}

/// `fit_wk` for a Hamiltonian given directly.
pub fn fit_wk(h: &PauliSum, p: u32, k: usize, grid: Option<&[f64]>, source: FitSource) -> Result<WkFit> {
    let system = TrotterSystem::new(h.clone())?;
    match grid {
        Some(g) => system.fit_wk(p, k, g, source),
        None => system.fit_wk(p, k, &system.default_grid()?, source),
    }
}
