use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::state::check_state_limit;
use super::StateVector;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{PauliString, PauliSum};

/// `exp(-i angle P)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliRotation {
    pub pauli: PauliString,
    pub angle: f64,
}

/// Ordered rotations realizing `[U'_p(t/S)]^S`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationSchedule {
    pub n_qubits: usize,
    pub rotations: Vec<PauliRotation>,
    pub order: u32,
    pub n_steps: u32,
    /// Total evolution time `t`; each step covers `t / S`.
    pub time: f64,
    pub ordering_tag: String,
}

impl RotationSchedule {
    pub fn step_time(&self) -> f64 {
        self.time / self.n_steps as f64
    }

    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }
}

/// Suzuki coefficient `a_p = 1 / (4 - 4^{1/(p-1)})` for the order-`p` recursion.
pub fn suzuki_coefficient(p: u32) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (p as f64 - 1.0)))
}

pub(crate) fn check_order(p: u32) -> Result<()> {
    if p == 1 || (p >= 2 && p % 2 == 0) {
        Ok(())
    } else {
        Err(Error::InvalidOrder(p))
    }
}

/// Product-formula schedule in the stored term order, emitted literally
/// (adjacent rotations on the same string are not merged).
///
/// * `p = 1`: `prod_l exp(-i alpha_l P_l tau)`
/// * `p = 2`: forward half steps followed by the reversed half steps
/// * `p >= 4`: `U_{p-2}(a tau)^2 U_{p-2}((1 - 4a) tau) U_{p-2}(a tau)^2`
pub fn trotter_schedule(h: &PauliSum, p: u32, n_steps: u32, t: f64) -> Result<RotationSchedule> {
    check_order(p)?;
    if n_steps == 0 {
        return Err(Error::InvalidSteps);
    }
    if !t.is_finite() {
        return Err(Error::invalid("t", t, "must be finite"));
    }
    let tau = t / n_steps as f64;
    let mut step = Vec::new();
    push_formula(h, p, tau, &mut step);
    let mut rotations = Vec::with_capacity(step.len() * n_steps as usize);
    for _ in 0..n_steps {
        rotations.extend_from_slice(&step);
    }
    Ok(RotationSchedule {
        n_qubits: h.n_qubits(),
        rotations,
        order: p,
        n_steps,
        time: t,
        ordering_tag: "stored".to_string(),
    })
}

fn push_formula(h: &PauliSum, p: u32, tau: f64, out: &mut Vec<PauliRotation>) {
    match p {
        1 => out.extend(h.terms().iter().map(|&(alpha, pauli)| PauliRotation {
            pauli,
            angle: alpha * tau,
        })),
        2 => {
            let half = |&(alpha, pauli): &(f64, PauliString)| PauliRotation {
                pauli,
                angle: alpha * tau / 2.0,
            };
            out.extend(h.terms().iter().map(half));
            out.extend(h.terms().iter().rev().map(half));
        }
        _ => {
            let a = suzuki_coefficient(p);
            for factor in [a, a, 1.0 - 4.0 * a, a, a] {
                push_formula(h, p - 2, factor * tau, out);
            }
        }
    }
}

/// Number of second-order calls and Pauli rotations for `S` steps of
/// order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QueryCount {
    pub queries: u64,
    pub operations: u64,
}

/// `queries = S * 5^{p/2 - 1}`, `operations = 2L * queries`.
pub fn query_count(p: u32, n_steps: u64, n_terms: u64) -> Result<QueryCount> {
    if p < 2 || p % 2 == 1 {
        return Err(Error::InvalidOrder(p));
    }
    let queries = n_steps * 5u64.pow(p / 2 - 1);
    Ok(QueryCount {
        queries,
        operations: queries * 2 * n_terms,
    })
}

pub fn apply_schedule(s: &RotationSchedule, psi: &StateVector) -> Result<StateVector> {
    if s.n_qubits != psi.n_qubits() {
        return Err(Error::WidthMismatch {
            expected: s.n_qubits,
            found: psi.n_qubits(),
        });
    }
    let mut out = psi.clone();
    apply_rotations(&s.rotations, out.amplitudes_mut());
    Ok(out)
}

/// Dense unitary of the schedule, one basis column at a time.
pub fn schedule_unitary(s: &RotationSchedule) -> Result<CMatrix> {
    crate::pauli::check_dense_limit(s.n_qubits)?;
    check_state_limit(s.n_qubits)?;
    let dim = 1usize << s.n_qubits;
    let mut u = CMatrix::identity(dim, dim);
    u.as_mut_slice()
        .par_chunks_mut(dim)
        .for_each(|column| apply_rotations(&s.rotations, column));
    Ok(u)
}

pub(crate) fn apply_rotations(rotations: &[PauliRotation], amps: &mut [Complex64]) {
    for r in rotations {
        apply_rotation(r, amps);
    }
}

/// `exp(-i theta P) = cos(theta) I - i sin(theta) P` on amplitude pairs
/// `(j, j ^ x)`.
#[inline]
fn apply_rotation(r: &PauliRotation, amps: &mut [Complex64]) {
    let x = r.pauli.x_mask() as usize;
    let z = r.pauli.z_mask() as usize;
    let (sin, cos) = r.angle.sin_cos();
    if x == 0 {
        let plus = Complex64::new(cos, -sin);
        let minus = Complex64::new(cos, sin);
        for (j, a) in amps.iter_mut().enumerate() {
            *a *= if (z & j).count_ones() % 2 == 0 { plus } else { minus };
        }
        return;
    }
    // P|j> = base * (-1)^{|z & j|} |j ^ x>
    let base = crate::pauli::Phase::from_power((x & z).count_ones()).to_complex();
    let k = Complex64::new(0.0, -sin) * base;
    let pivot = 1usize << (usize::BITS - 1 - x.leading_zeros());
    for j in 0..amps.len() {
        if j & pivot != 0 {
            continue;
        }
        let jp = j ^ x;
        let sign_j = if (z & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let sign_jp = if (z & jp).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let (a, b) = (amps[j], amps[jp]);
        amps[j] = a * cos + k * sign_jp * b;
        amps[jp] = b * cos + k * sign_j * a;
    }
}
