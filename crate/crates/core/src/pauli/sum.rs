use std::collections::{BTreeMap, HashSet};

use num_complex::Complex64;

use super::{PauliString, ScaledPauli};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::DENSE_MATRIX_LIMIT;

/// Coefficients below this magnitude are dropped when accumulating sums.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// A Hermitian operator `sum_l alpha_l P_l` with real coefficients and
/// distinct strings, kept in insertion order.
///
/// The term order is significant: product formulas and the commutator bound
/// both depend on it.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    pub fn new(n_qubits: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > super::MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let mut seen = HashSet::with_capacity(terms.len());
        for (coeff, pauli) in &terms {
            if pauli.n_qubits() != n_qubits {
                return Err(Error::WidthMismatch {
                    expected: n_qubits,
                    found: pauli.n_qubits(),
                });
            }
            if !coeff.is_finite() {
                return Err(Error::NonFiniteCoefficient(pauli.to_string()));
            }
            if !seen.insert(*pauli) {
                return Err(Error::DuplicateTerm(pauli.to_string()));
            }
        }
        Ok(Self { n_qubits, terms })
    }

    /// Builds a sum from `(label, coefficient)` pairs; the width is taken
    /// from the first label.
    pub fn from_labels(terms: &[(&str, f64)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(label, c)| PauliString::parse(label).map(|p| (*c, p)))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map(|(_, p)| p.n_qubits()).unwrap_or(0);
        Self::new(n, parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    /// Number of terms `L`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(c, p)| (c * factor, *p)).collect(),
        }
    }

    /// True when every pair of terms commutes.
    pub fn is_commuting(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (_, a))| {
            self.terms[i + 1..]
                .iter()
                .all(|(_, b)| a.commutes_with(b))
        })
    }
}

/// Sum of absolute coefficients.
pub fn l1_norm(h: &PauliSum) -> f64 {
    h.terms.iter().map(|(c, _)| c.abs()).sum()
}

/// Dense `2^N x 2^N` matrix of `h`. Qubit `q` is bit `q` of the basis index.
pub fn to_dense_matrix(h: &PauliSum) -> Result<CMatrix> {
    check_dense_limit(h.n_qubits)?;
    let dim = 1usize << h.n_qubits;
    let mut m = CMatrix::zeros(dim, dim);
    for (coeff, pauli) in &h.terms {
        add_pauli_columns(&mut m, Complex64::new(*coeff, 0.0), pauli);
    }
    Ok(m)
}

pub(crate) fn check_dense_limit(n_qubits: usize) -> Result<()> {
    if n_qubits > DENSE_MATRIX_LIMIT {
        return Err(Error::DenseLimit {
            n_qubits,
            limit: DENSE_MATRIX_LIMIT,
        });
    }
    Ok(())
}

fn add_pauli_columns(m: &mut CMatrix, coeff: Complex64, pauli: &PauliString) {
    for col in 0..m.ncols() {
        let (phase, row) = pauli.apply_to_basis(col);
        m[(row, col)] += coeff * phase;
    }
}

/// Linear combination of Pauli strings with complex coefficients, merging
/// equal strings as terms are added. Iteration order is the string order,
/// independent of insertion order.
#[derive(Clone, Debug, Default)]
pub struct PauliAccumulator {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliAccumulator {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn add(&mut self, coefficient: Complex64, pauli: PauliString) {
        debug_assert_eq!(pauli.n_qubits(), self.n_qubits);
        *self.terms.entry(pauli).or_default() += coefficient;
    }

    pub fn add_scaled(&mut self, term: ScaledPauli, factor: Complex64) {
        self.add(term.coefficient * factor, term.pauli);
    }

    /// Drops coefficients with magnitude below [`PRUNE_TOLERANCE`].
    pub fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOLERANCE);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn to_dense(&self) -> Result<CMatrix> {
        check_dense_limit(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for (pauli, coeff) in &self.terms {
            add_pauli_columns(&mut m, *coeff, pauli);
        }
        Ok(m)
    }
}
