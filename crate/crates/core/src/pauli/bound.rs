//! Nested-commutator bound on the second-order Trotter error.

use num_complex::Complex64;

use super::{PauliAccumulator, PauliString, PauliSum};

/// The two accumulated nested-commutator sums for one outer index `b`.
#[derive(Clone, Debug)]
pub struct NestedCommutatorSums {
    pub b: usize,
    /// `sum_{c>b} sum_{a>b} [[H_b, H_c], H_a]`
    pub triple: PauliAccumulator,
    /// `sum_{c>b} [[H_b, H_c], H_b]`
    pub double: PauliAccumulator,
}

impl NestedCommutatorSums {
    /// Contribution of this `b` to the bound, before the overall `1/12`.
    pub fn weight(&self) -> f64 {
        self.triple.l1_norm() + 0.5 * self.double.l1_norm()
    }
}

/// Accumulated sums for every `b` except the last term, in stored order
/// (`b` is 0-based here).
pub fn nested_commutator_sums(h: &PauliSum) -> Vec<NestedCommutatorSums> {
    let n = h.n_qubits();
    let terms = h.terms();
    let l = terms.len();
    (0..l.saturating_sub(1))
        .map(|b| {
            let (alpha_b, p_b) = terms[b];
            let mut inner = PauliAccumulator::new(n);
            for &(alpha_c, p_c) in &terms[b + 1..] {
                add_commutator(&mut inner, &p_b, &p_c, Complex64::new(alpha_b * alpha_c, 0.0));
            }
            inner.prune();

            let mut triple = PauliAccumulator::new(n);
            let mut double = PauliAccumulator::new(n);
            for (pauli, coeff) in inner.iter() {
                for &(alpha_a, p_a) in &terms[b + 1..] {
                    add_commutator(&mut triple, pauli, &p_a, coeff * alpha_a);
                }
                add_commutator(&mut double, pauli, &p_b, coeff * alpha_b);
            }
            triple.prune();
            double.prune();
            NestedCommutatorSums { b, triple, double }
        })
        .collect()
}

/// The commutator bound `W_C`. Zero when all terms commute. Depends on the
/// stored term order.
pub fn commutator_bound(h: &PauliSum) -> f64 {
    nested_commutator_sums(h)
        .iter()
        .map(NestedCommutatorSums::weight)
        .sum::<f64>()
        / 12.0
}

fn add_commutator(acc: &mut PauliAccumulator, a: &PauliString, b: &PauliString, scale: Complex64) {
    if a.commutes_with(b) {
        return;
    }
    let (phase, pauli) = a.product(b);
    acc.add(phase.to_complex() * scale * 2.0, pauli);
}
