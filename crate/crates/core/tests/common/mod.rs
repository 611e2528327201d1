#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use trotter_core::pauli::{PauliString, PauliSum};
use trotter_core::hamiltonian::random_pauli_hamiltonian;
use trotter_core::RngSeed;

pub type M = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(ch: char) -> M {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match ch {
        'I' => M::from_row_slice(2, 2, &[l, o, o, l]),
        'X' => M::from_row_slice(2, 2, &[o, l, l, o]),
        'Y' => M::from_row_slice(2, 2, &[o, -i, i, o]),
        'Z' => M::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => unreachable!(),
    }
}

/// Kronecker product with qubit 0 as the least significant factor.
pub fn kron_pauli(p: &PauliString) -> M {
    let label = p.to_string();
    let mut m = M::identity(1, 1);
    for ch in label.chars() {
        m = single(ch).kronecker(&m);
    }
    m
}

pub fn kron_sum(h: &PauliSum) -> M {
    let dim = 1usize << h.n_qubits();
    let mut m = M::zeros(dim, dim);
    for (coeff, p) in h.terms() {
        m += kron_pauli(p) * c(*coeff, 0.0);
    }
    m
}

/// `exp(-i theta A)` for Hermitian `A` through its eigendecomposition.
pub fn expm_hermitian(a: &M, theta: f64) -> M {
    let eig = a.clone().symmetric_eigen();
    let d = M::from_diagonal(&nalgebra::DVector::from_iterator(
        a.nrows(),
        eig.eigenvalues.iter().map(|l| Complex64::from_polar(1.0, -theta * l)),
    ));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_sum(n: usize, l: usize, seed: u64, label: &str) -> PauliSum {
    random_pauli_hamiltonian(n, Some(l), &RngSeed::new(seed, label)).unwrap()
}

/// Random sum with Gaussian-ish coefficients from a simple LCG, for tests
/// that need non-unit weights.
pub fn weighted_sum(n: usize, l: usize, seed: u64) -> PauliSum {
    let base = random_sum(n, l, seed, "weighted");
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let terms = base
        .terms()
        .iter()
        .map(|(_, p)| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            (2.0 * u - 1.0, *p)
        })
        .collect();
    PauliSum::new(n, terms).unwrap()
}
