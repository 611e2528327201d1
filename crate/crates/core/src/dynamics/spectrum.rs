use num_complex::Complex64;

use super::StateVector;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::pauli::{to_dense_matrix, PauliSum};

/// Exact eigenpairs of a Hamiltonian, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub n_qubits: usize,
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub eigenvectors: CMatrix,
}

/// Full Hermitian eigendecomposition; index 0 is the ground state.
pub fn exact_eigenpairs(h: &PauliSum) -> Result<SpectralData> {
    let dense = to_dense_matrix(h)?;
    let (eigenvalues, eigenvectors) = hermitian_eigen(&dense);
    Ok(SpectralData {
        n_qubits: h.n_qubits(),
        eigenvalues,
        eigenvectors,
    })
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |lambda_k|`.
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn eigenstate(&self, k: usize) -> Result<StateVector> {
        if k >= self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: k,
            });
        }
        StateVector::normalized(self.n_qubits, self.eigenvectors.column(k).iter().copied().collect())
    }

    /// Dense `exp(-iHt)`.
    pub fn evolution_operator(&self, t: f64) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -lambda * t);
            scaled.column_mut(k).iter_mut().for_each(|c| *c *= phase);
        }
        scaled * v.adjoint()
    }
}

/// `sum_k exp(-i lambda_k t) <lambda_k|psi> |lambda_k>`.
pub fn exact_evolve(spec: &SpectralData, t: f64, psi: &StateVector) -> Result<StateVector> {
    if psi.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: psi.dim(),
        });
    }
    let v = &spec.eigenvectors;
    let psi_vec = nalgebra::DVector::from_column_slice(psi.amplitudes());
    let mut coeffs = v.ad_mul(&psi_vec);
    for (c, lambda) in coeffs.iter_mut().zip(&spec.eigenvalues) {
        *c *= Complex64::from_polar(1.0, -lambda * t);
    }
    let out = v * coeffs;
    StateVector::normalized(psi.n_qubits(), out.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn z_and_x_plus_z_spectra() {
        let z = exact_eigenpairs(&PauliSum::from_labels(&[("Z", 1.0)]).unwrap()).unwrap();
        assert_eq!(z.eigenvalues, vec![-1.0, 1.0]);
        let xz = exact_eigenpairs(&PauliSum::from_labels(&[("X", 1.0), ("Z", 1.0)]).unwrap()).unwrap();
        assert!((xz.eigenvalues[0] + 2f64.sqrt()).abs() < 1e-14);
        assert!((xz.eigenvalues[1] - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn evolve_z_on_zero() {
        let spec = exact_eigenpairs(&PauliSum::from_labels(&[("Z", 1.0)]).unwrap()).unwrap();
        let psi = StateVector::basis(1, 0).unwrap();
        let out = exact_evolve(&spec, 0.7, &psi).unwrap();
        assert!((out.amplitudes()[0] - Complex64::from_polar(1.0, -0.7)).norm() < 1e-14);
        assert!(out.amplitudes()[1].norm() < 1e-14);
    }

    #[test]
    fn evolution_operator_matches_state_evolution() {
        let h = PauliSum::from_labels(&[("XZ", 0.4), ("YY", -1.2), ("ZI", 0.3)]).unwrap();
        let spec = exact_eigenpairs(&h).unwrap();
        let u = spec.evolution_operator(0.9);
        assert!(max_abs_diff(&(u.adjoint() * &u), &CMatrix::identity(4, 4)) < 1e-13);
        let psi = StateVector::basis(2, 2).unwrap();
        let out = exact_evolve(&spec, 0.9, &psi).unwrap();
        for i in 0..4 {
            assert!((out.amplitudes()[i] - u[(i, 2)]).norm() < 1e-13);
        }
    }
}
