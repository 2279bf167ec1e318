use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitMismatch { expected: usize, found: usize },

    #[error("{what} supports at most {limit} qubits, got {n_qubits}")]
    SizeGuard {
        what: &'static str,
        n_qubits: usize,
        limit: usize,
    },

    #[error("wire {wire} out of range for {n_qubits} qubits")]
    WireOutOfRange { wire: usize, n_qubits: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("matrix is not skew-Hermitian (max |A + A^dagger| = {deviation:e})")]
    NotSkewHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unitarity drift {drift:e} exceeds tolerance")]
    UnitarityDrift { drift: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn check_qubits(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::QubitMismatch { expected, found })
        }
    }

    pub(crate) fn guard(what: &'static str, n_qubits: usize, limit: usize) -> Result<()> {
        if n_qubits > limit {
            Err(Error::SizeGuard {
                what,
                n_qubits,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
