//! Pauli strings in symplectic form.
//!
//! A string on `n` qubits is stored as two bitmasks: bit `q` of `x` (`z`) is
//! set when qubit `q` carries an X (Z) component, and Y is the combination
//! of both. The operator represented is
//!
//! ```text
//!   P = i^{|x & z|} X^x Z^z
//! ```
//!
//! so that every string is Hermitian. In the character form (`"XZIY"`)
//! character `q` acts on qubit `q`. In dense matrices and state vectors
//! qubit `q` is bit `q` of the basis index.

mod bound;
mod sum;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use bound::{commutator_bound, nested_commutator_sums, NestedCommutatorSums};
pub use sum::{l1_norm, to_dense_matrix, PauliAccumulator, PauliSum, PRUNE_TOLERANCE};
pub(crate) use sum::check_dense_limit;

/// Widest string representable by the 64-bit masks.
pub const MAX_QUBITS: usize = 64;

/// Powers of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_power(power: u32) -> Self {
        match power % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn power(self) -> u32 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_power(self.power() + rhs.power())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::from_masks(n_qubits, 0, 0)
    }

    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let mask = width_mask(n_qubits);
        if (x | z) & !mask != 0 {
            return Err(Error::WidthMismatch {
                expected: n_qubits,
                found: (64 - (x | z).leading_zeros()) as usize,
            });
        }
        Ok(Self { n_qubits, x, z })
    }

    /// Parses the character form, one of `I`, `X`, `Y`, `Z` per qubit.
    pub fn parse(s: &str) -> Result<Self> {
        let n_qubits = s.chars().count();
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, ch) in s.chars().enumerate() {
            let (xb, zb) = match ch {
                'I' => (0, 0),
                'X' => (1, 0),
                'Y' => (1, 1),
                'Z' => (0, 1),
                _ => return Err(Error::InvalidPauliChar { ch, position: q }),
            };
            x |= xb << q;
            z |= zb << q;
        }
        Ok(Self { n_qubits, x, z })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn char_at(&self, qubit: usize) -> char {
        match ((self.x >> qubit) & 1, (self.z >> qubit) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Action on a computational basis state: `P|j> = phase * |j ^ x>`.
    #[inline]
    pub fn apply_to_basis(&self, index: usize) -> (Complex64, usize) {
        let sign_flips = (self.z & index as u64).count_ones();
        let phase = Phase::from_power((self.x & self.z).count_ones() + 2 * sign_flips);
        (phase.to_complex(), index ^ self.x as usize)
    }

    fn check_width(&self, other: &PauliString) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Product phase and string, without the width check.
    pub(crate) fn product(&self, other: &PauliString) -> (Phase, PauliString) {
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let y1 = x1 & z1;
        let x_only = x1 & !z1;
        let z_only = z1 & !x1;
        // Per-qubit exponent of i from the single-qubit table.
        let plus = (y1 & z2 & !x2).count_ones()
            + (x_only & z2 & x2).count_ones()
            + (z_only & x2 & !z2).count_ones();
        let minus = (y1 & x2 & !z2).count_ones()
            + (x_only & z2 & !x2).count_ones()
            + (z_only & x2 & z2).count_ones();
        let power = (4 * MAX_QUBITS as u32 + plus - minus) % 4;
        (
            Phase::from_power(power),
            PauliString {
                n_qubits: self.n_qubits,
                x: x1 ^ x2,
                z: z1 ^ z2,
            },
        )
    }
}

#[inline]
pub(crate) fn width_mask(n_qubits: usize) -> u64 {
    if n_qubits >= 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.char_at(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A Pauli string with a complex coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledPauli {
    pub coefficient: Complex64,
    pub pauli: PauliString,
}

/// Product `a * b`. The coefficient is always one of `{1, i, -1, -i}`.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<ScaledPauli> {
    a.check_width(b)?;
    let (phase, pauli) = a.product(b);
    Ok(ScaledPauli {
        coefficient: phase.to_complex(),
        pauli,
    })
}

/// Commutator `[a, b] = ab - ba`; `None` when the strings commute.
pub fn commutator(a: &PauliString, b: &PauliString) -> Result<Option<ScaledPauli>> {
    a.check_width(b)?;
    if a.commutes_with(b) {
        return Ok(None);
    }
    let (phase, pauli) = a.product(b);
    Ok(Some(ScaledPauli {
        coefficient: phase.to_complex() * 2.0,
        pauli,
    }))
}
