use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("width mismatch: expected {expected} qubits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("{0} qubits is not supported (Pauli masks hold at most 64)")]
    TooManyQubits(usize),

    #[error("invalid Pauli character {ch:?} at position {position}")]
    InvalidPauliChar { ch: char, position: usize },

    #[error("duplicate Pauli term {0}")]
    DuplicateTerm(String),

    #[error("non-finite coefficient for term {0}")]
    NonFiniteCoefficient(String),

    #[error("{n_qubits} qubits exceeds the dense limit of {limit}")]
    DenseLimit { n_qubits: usize, limit: usize },

    #[error("cannot sample {requested} distinct Pauli strings from {available}")]
    TooManyTerms { requested: usize, available: u128 },

    #[error("the Hamiltonian has zero spectral norm")]
    ZeroHamiltonian,

    #[error("unsupported product-formula order {0} (expected 1 or an even order >= 2)")]
    InvalidOrder(u32),

    #[error("the number of Trotter steps must be at least 1")]
    InvalidSteps,

    #[error("invalid argument `{name}` = {value}: {reason}")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (max |U^dag U - I| = {0:e})")]
    NonUnitary(f64),

    #[error("overlap amplitude modulus {0:e} is too small to define a phase")]
    UndefinedPhase(f64),

    #[error("phase uncertainty undefined: estimated |amplitude|^2 = {0:e}")]
    UndefinedUncertainty(f64),

    #[error("cannot fit the Trotter error constant: {0}")]
    Unfittable(String),

    #[error("error budget too loose: optimal phase register size log2 = {0} is not positive")]
    NoQueriesRequired(f64),

    #[error("{path}: line {line}: {message}")]
    HamiltonianFormat {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidArgument {
            name,
            value,
            reason,
        }
    }
}
