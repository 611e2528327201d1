//! Numerical laboratory for Trotter error.
//!
//! Pauli-sum Hamiltonians are simulated exactly with dense linear algebra
//! and with product-formula rotation schedules. The gap between the two is
//! measured as eigenvalue shifts, phase errors on states, fidelity errors and
//! operator norms, optionally through simulated Hadamard-test shots, and the
//! fitted error constants feed closed-form resource estimates for quantum
//! phase estimation.

pub mod dynamics;
pub mod error;
pub mod error_lab;
pub mod hamiltonian;
pub mod linalg;
pub mod pauli;
pub mod qre;
pub mod seed;
pub mod shots;

pub use error::{Error, Result};
pub use seed::RngSeed;

/// Largest register for which dense matrices are built.
pub const DENSE_MATRIX_LIMIT: usize = 12;

/// Largest register for which state vectors are built.
pub const DENSE_STATE_LIMIT: usize = 20;
