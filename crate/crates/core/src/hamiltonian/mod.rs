//! Hamiltonian sources: random Pauli sums, Pauli-sum files, and the
//! spectral norm used to pick evolution times.

mod file;

use std::collections::HashSet;
use std::f64::consts::PI;

use rand::seq::index;
use rand::Rng;

use crate::dynamics::exact_eigenpairs;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum, MAX_QUBITS};
use crate::seed::RngSeed;

pub use file::{load_hamiltonian, save_hamiltonian, FileTerm, HamiltonianFile};

/// Samples `n_terms` distinct strings uniformly from all `4^N` tensor
/// products of `I, X, Y, Z` (identity included), each with coefficient 1.
/// The sampling order is kept as the term order. `n_terms` defaults to `N^2`.
pub fn random_pauli_hamiltonian(
    n_qubits: usize,
    n_terms: Option<usize>,
    seed: &RngSeed,
) -> Result<PauliSum> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    let n_terms = n_terms.unwrap_or(n_qubits * n_qubits);
    let available = 1u128.checked_shl(2 * n_qubits as u32).unwrap_or(u128::MAX);
    if n_terms as u128 > available {
        return Err(Error::TooManyTerms {
            requested: n_terms,
            available,
        });
    }
    let mut rng = seed.rng();
    let strings: Vec<PauliString> = if 2 * n_qubits < usize::BITS as usize {
        index::sample(&mut rng, 1usize << (2 * n_qubits), n_terms)
            .into_iter()
            .map(|i| string_from_index(n_qubits, i as u128))
            .collect()
    } else {
        let mask = if n_qubits >= 64 { u128::MAX } else { available - 1 };
        let mut seen = HashSet::with_capacity(n_terms);
        let mut out = Vec::with_capacity(n_terms);
        while out.len() < n_terms {
            let i = rng.random::<u128>() & mask;
            if seen.insert(i) {
                out.push(string_from_index(n_qubits, i));
            }
        }
        out
    };
    PauliSum::new(n_qubits, strings.into_iter().map(|p| (1.0, p)).collect())
}

/// Base-4 digit `q` of `index` selects the factor on qubit `q`
/// (`0 = I, 1 = X, 2 = Y, 3 = Z`).
fn string_from_index(n_qubits: usize, index: u128) -> PauliString {
    let (mut x, mut z) = (0u64, 0u64);
    for q in 0..n_qubits {
        let (xb, zb) = match (index >> (2 * q)) & 3 {
            0 => (0, 0),
            1 => (1, 0),
            2 => (1, 1),
            _ => (0, 1),
        };
        x |= xb << q;
        z |= zb << q;
    }
    PauliString::from_masks(n_qubits, x, z).expect("digits stay within the width")
}

/// `max |lambda|` over the dense spectrum.
pub fn spectral_norm(h: &PauliSum) -> Result<f64> {
    let spec = exact_eigenpairs(h)?;
    Ok(spec.spectral_norm())
}

/// `t = pi / (divisor * ||H||)`.
pub fn default_time(h: &PauliSum, divisor: f64) -> Result<f64> {
    time_from_norm(spectral_norm(h)?, divisor)
}

pub fn time_from_norm(norm: f64, divisor: f64) -> Result<f64> {
    if !(divisor > 0.0) || !divisor.is_finite() {
        return Err(Error::invalid("divisor", divisor, "must be positive"));
    }
    if !(norm > 0.0) {
        return Err(Error::ZeroHamiltonian);
    }
    Ok(PI / (divisor * norm))
}
