use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::seed::RngSeed;
use crate::DENSE_STATE_LIMIT;

/// Normalization tolerance for states handed to the library.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Dense pure state on `n` qubits; qubit `q` is bit `q` of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_state_limit(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unchecked(n_qubits, amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid("state norm", norm, "must be 1"));
        }
        Ok(state)
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::unchecked(n_qubits, amplitudes)?;
        let norm = state.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::invalid("state norm", norm, "cannot normalize"));
        }
        state.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(state)
    }

    fn unchecked(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_state_limit(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Haar-random state from independent complex Gaussian amplitudes.
    pub fn haar_random(n_qubits: usize, seed: &RngSeed) -> Result<Self> {
        Self::haar_random_with(n_qubits, &mut seed.rng())
    }

    pub fn haar_random_with<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_state_limit(n_qubits)?;
        let amplitudes = gaussian_vector(1usize << n_qubits, rng);
        Self::normalized(n_qubits, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub(crate) fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect()
}

pub(crate) fn check_state_limit(n_qubits: usize) -> Result<()> {
    if n_qubits > DENSE_STATE_LIMIT {
        return Err(Error::DenseLimit {
            n_qubits,
            limit: DENSE_STATE_LIMIT,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_states_are_normalized_and_seeded() {
        let s = RngSeed::new(3, "psi");
        let a = StateVector::haar_random(5, &s).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-12);
        assert_eq!(a, StateVector::haar_random(5, &s).unwrap());
        assert_ne!(a, StateVector::haar_random(5, &s.derive(1)).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(StateVector::basis(2, 4).is_err());
        assert!(StateVector::basis(DENSE_STATE_LIMIT + 1, 0).is_err());
        let two = vec![Complex64::new(1.0, 0.0); 2];
        assert!(StateVector::from_amplitudes(1, two.clone()).is_err());
        assert!((StateVector::normalized(1, two).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inner_product_is_antilinear_in_bra() {
        let a = StateVector::normalized(1, vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]).unwrap();
        let b = StateVector::basis(1, 0).unwrap();
        let ip = a.inner(&b).unwrap();
        assert!((ip - Complex64::new(0.0, -(0.5f64).sqrt())).norm() < 1e-15);
    }
}
