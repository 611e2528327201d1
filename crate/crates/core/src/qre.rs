//! Closed-form resource estimates for Trotter-based phase estimation.
//!
//! With a Trotter error `w t^p` and a `B`-qubit phase register the total
//! error is `pi / (t 2^B) + w t^p`. Fixing it to the budget `eps` gives
//! `2^B = pi / (t (eps - w t^p))`, and the query count
//! `Q = 5^{p/2 - 1} (2^B - 1)` is minimized in closed form over `t`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dynamics::query_count;
use crate::error::{Error, Result};
use crate::error_lab::{FitSource, TrotterSystem};
use crate::pauli::commutator_bound;

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, v, "must be positive"))
    }
}

fn check_even(p: u32) -> Result<()> {
    if p >= 2 && p % 2 == 0 {
        Ok(())
    } else {
        Err(Error::InvalidOrder(p))
    }
}

/// `t_* = (eps / ((p + 1) w))^{1/p}`.
pub fn optimal_time(w: f64, eps: f64, p: u32) -> Result<f64> {
    check_positive("w", w)?;
    check_positive("epsilon", eps)?;
    check_even(p)?;
    Ok((eps / ((p as f64 + 1.0) * w)).powf(1.0 / p as f64))
}

/// `pi / ||H||`, the largest time with an unambiguous eigenphase readout.
pub fn t_max(norm_h: f64) -> Result<f64> {
    if !(norm_h > 0.0) || !norm_h.is_finite() {
        return Err(Error::ZeroHamiltonian);
    }
    Ok(PI / norm_h)
}

/// `pi 3^{3/2} w^{1/2} / (2 eps^{3/2})`, the optimal `2^B` at second order.
fn second_order_amplitude(w: f64, eps: f64) -> f64 {
    PI * 3f64.powf(1.5) * w.sqrt() / (2.0 * eps.powf(1.5))
}

/// Optimal second-order phase-estimation resources.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceEstimate {
    pub error_budget: f64,
    pub w: f64,
    pub order: u32,
    pub n_terms: usize,
    pub t_star: f64,
    /// `pi / ||H||` when the norm is known.
    pub t_max: Option<f64>,
    /// Advisory only: `t_star <= t_max`.
    pub feasible: Option<bool>,
    pub b_star_real: f64,
    pub b_star: u32,
    pub q_star: f64,
    pub o_star: f64,
}

impl ResourceEstimate {
    pub fn with_norm(mut self, norm_h: f64) -> Result<Self> {
        let t_max = t_max(norm_h)?;
        self.t_max = Some(t_max);
        self.feasible = Some(self.t_star <= t_max);
        Ok(self)
    }

    /// `(pi / (t_* 2^B), w t_*^2)` at the real-valued optimum.
    pub fn error_split(&self) -> (f64, f64) {
        (
            PI / (self.t_star * self.b_star_real.exp2()),
            self.w * self.t_star.powi(2),
        )
    }
}

/// Second-order optimum: `B = log2(A)`, `Q = A - 1`, `O = 2L Q` with
/// `A = pi 3^{3/2} w^{1/2} / (2 eps^{3/2})`.
pub fn qpe_resources(w: f64, eps: f64, n_terms: usize) -> Result<ResourceEstimate> {
    check_positive("w", w)?;
    check_positive("epsilon", eps)?;
    if n_terms == 0 {
        return Err(Error::invalid("L", 0.0, "need at least one term"));
    }
    let a = second_order_amplitude(w, eps);
    let b_real = a.log2();
    if !(b_real > 0.0) {
        return Err(Error::NoQueriesRequired(b_real));
    }
    let q = a - 1.0;
    Ok(ResourceEstimate {
        error_budget: eps,
        w,
        order: 2,
        n_terms,
        t_star: optimal_time(w, eps, 2)?,
        t_max: None,
        feasible: None,
        b_star_real: b_real,
        b_star: b_real.ceil() as u32,
        q_star: q,
        o_star: 2.0 * n_terms as f64 * q,
    })
}

/// `Q(t) = 5^{p/2-1} (pi / (t (eps - w t^p)) - 1)` on the feasible branch
/// `w t^p < eps`; infinite elsewhere.
pub fn query_objective(w: f64, eps: f64, p: u32, t: f64) -> f64 {
    let slack = eps - w * t.powi(p as i32);
    if !(t > 0.0) || !(slack > 0.0) {
        return f64::INFINITY;
    }
    5f64.powi(p as i32 / 2 - 1) * (PI / (t * slack) - 1.0)
}

/// `Q_S(t) = pi / (t (eps - w t^2 / S)) - S`; infinite off the feasible branch.
pub fn multi_step_objective(w: f64, eps: f64, n_steps: u32, t: f64) -> f64 {
    let s = n_steps as f64;
    let slack = eps - w * t * t / s;
    if !(t > 0.0) || !(slack > 0.0) {
        return f64::INFINITY;
    }
    PI / (t * slack) - s
}

/// Optimal queries at order `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HigherOrderEstimate {
    pub order: u32,
    pub t_star: f64,
    pub prefactor: f64,
    pub queries: f64,
}

/// `Q_p = 5^{p/2-1} (pi w^{1/p} (p+1)^{1/p+1} / (p eps^{1/p+1}) - 1)`.
pub fn higher_order_query(w: f64, eps: f64, p: u32) -> Result<HigherOrderEstimate> {
    let t_star = optimal_time(w, eps, p)?;
    let pf = p as f64;
    let inner = PI * w.powf(1.0 / pf) * (pf + 1.0).powf(1.0 / pf + 1.0) / (pf * eps.powf(1.0 / pf + 1.0));
    if !(inner > 1.0) {
        return Err(Error::NoQueriesRequired(inner.log2()));
    }
    let prefactor = 5f64.powi(p as i32 / 2 - 1);
    Ok(HigherOrderEstimate {
        order: p,
        t_star,
        prefactor,
        queries: prefactor * (inner - 1.0),
    })
}

/// Optimal queries with `S` second-order steps per controlled evolution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiStepEstimate {
    pub n_steps: u32,
    pub t_star: f64,
    pub queries: f64,
    pub t_max: Option<f64>,
    pub feasible: Option<bool>,
}

/// `Q_S = A / S^{1/2} - S` at `t_*(S) = sqrt(eps S / (3 w))`.
pub fn multi_step_query(w: f64, eps: f64, n_steps: u32, norm_h: Option<f64>) -> Result<MultiStepEstimate> {
    check_positive("w", w)?;
    check_positive("epsilon", eps)?;
    if n_steps == 0 {
        return Err(Error::InvalidSteps);
    }
    let s = n_steps as f64;
    let a = second_order_amplitude(w, eps);
    // 2^B = A / S^{3/2}
    let b_real = a.log2() - 1.5 * s.log2();
    if !(b_real > 0.0) {
        return Err(Error::NoQueriesRequired(b_real));
    }
    let t_star = (eps * s / (3.0 * w)).sqrt();
    let t_max = norm_h.map(t_max).transpose()?;
    Ok(MultiStepEstimate {
        n_steps,
        t_star,
        queries: a / s.sqrt() - s,
        t_max,
        feasible: t_max.map(|m| t_star <= m),
    })
}

/// Classical bound versus measured error constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub eigenindex: usize,
    pub order: u32,
    pub reference_order: u32,
    pub w_commutator: f64,
    pub w_quantum: f64,
    pub w_exact: f64,
    pub classical: ResourceEstimate,
    pub quantum: ResourceEstimate,
    pub exact: ResourceEstimate,
    /// Pauli rotations in one evaluation of the target and reference
    /// product formulas.
    pub measurement_operations: u64,
}

impl ComparisonReport {
    /// `(O_classical + 2L) / (O_exact + 2L)`, equal to `sqrt(W_C / W)`.
    pub fn classical_exact_ratio(&self) -> f64 {
        let offset = 2.0 * self.classical.n_terms as f64;
        (self.classical.o_star + offset) / (self.exact.o_star + offset)
    }
}

/// Resource estimates from `W_C`, from `W` fitted to approximate phase
/// errors (reference order `p_prime`), and from `W` fitted to exact Trotter
/// errors, all on `grid`.
pub fn compare_estimates(
    system: &TrotterSystem,
    k: usize,
    eps: f64,
    p_prime: u32,
    grid: &[f64],
) -> Result<ComparisonReport> {
    let p = 2;
    let l = system.hamiltonian().len();
    let w_c = commutator_bound(system.hamiltonian());
    let quantum_fit = system.fit_wk(p, k, grid, FitSource::ApproxPhase { p_prime })?;
    let exact_fit = system.fit_wk(p, k, grid, FitSource::Exact)?;
    let norm = system.norm();
    let measurement_queries = query_count(p, 1, l as u64)?.queries + query_count(p_prime, 1, l as u64)?.queries;
    Ok(ComparisonReport {
        eigenindex: k,
        order: p,
        reference_order: p_prime,
        w_commutator: w_c,
        w_quantum: quantum_fit.w,
        w_exact: exact_fit.w,
        classical: qpe_resources(w_c, eps, l)?.with_norm(norm)?,
        quantum: qpe_resources(quantum_fit.w, eps, l)?.with_norm(norm)?,
        exact: qpe_resources(exact_fit.w, eps, l)?.with_norm(norm)?,
        measurement_operations: measurement_queries * 2 * l as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_time_examples() {
        assert!((optimal_time(1.0 / 3.0, 1.0, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!(optimal_time(0.0, 1.0, 2).is_err());
        assert!(optimal_time(1.0, 1.0, 3).is_err());
    }

    #[test]
    fn second_order_example() {
        let r = qpe_resources(0.5, 0.01, 10).unwrap();
        let a = PI * 3f64.powf(1.5) * 0.5f64.sqrt() / (2.0 * 0.01f64.powf(1.5));
        assert!((r.o_star - (2.0 * 10.0 * a - 20.0)).abs() < 1e-6);
        assert!((r.o_star / 1.154e5 - 1.0).abs() < 1e-3);
        assert_eq!(r.o_star, r.q_star * 20.0);
        assert_eq!(r.b_star, r.b_star_real.ceil() as u32);
        let (disc, trot) = r.error_split();
        assert!((disc / (2.0 * 0.01 / 3.0) - 1.0).abs() < 1e-12);
        assert!((trot / (0.01 / 3.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loose_budget_needs_no_queries() {
        assert!(matches!(qpe_resources(1e-6, 10.0, 4), Err(Error::NoQueriesRequired(_))));
    }

    #[test]
    fn higher_order_reduces_to_second_order() {
        let (w, eps) = (0.7, 0.003);
        let q2 = higher_order_query(w, eps, 2).unwrap();
        assert!((q2.queries / qpe_resources(w, eps, 1).unwrap().q_star - 1.0).abs() < 1e-12);
        assert_eq!(higher_order_query(w, eps, 4).unwrap().prefactor, 5.0);
        assert_eq!(higher_order_query(w, eps, 6).unwrap().prefactor, 25.0);
    }

    #[test]
    fn multi_step_scaling() {
        let (w, eps) = (0.7, 0.003);
        let one = multi_step_query(w, eps, 1, None).unwrap();
        assert!((one.queries / qpe_resources(w, eps, 1).unwrap().q_star - 1.0).abs() < 1e-12);
        let four = multi_step_query(w, eps, 4, None).unwrap();
        assert!((four.t_star / one.t_star - 2.0).abs() < 1e-12);
    }

    #[test]
    fn t_max_and_feasibility() {
        assert!((t_max(PI).unwrap() - 1.0).abs() < 1e-15);
        assert!(t_max(0.0).is_err());
        let tight = qpe_resources(1.0, 1e-3, 2).unwrap().with_norm(2f64.sqrt()).unwrap();
        assert_eq!(tight.feasible, Some(true));
        let loose = qpe_resources(1.0, 0.2, 2).unwrap().with_norm(50.0).unwrap();
        assert_eq!(loose.feasible, Some(false));
    }
}
