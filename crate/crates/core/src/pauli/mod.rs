//! Pauli-word arithmetic, Lie-algebra subspace bases and dense conversions.

mod basis;
mod dense;
mod parse;
mod sum;
mod word;

pub use basis::{BasisLabel, SubspaceBasis};
pub use dense::{pauli_sum_to_dense, word_to_dense, MAX_DENSE_QUBITS};
pub use parse::{parse_pauli_sum, parse_pauli_sum_with_qubits};
pub use sum::{PauliSum, PauliTerm, DROP_THRESHOLD};
pub use word::{Letter, PauliWord, Phase, MAX_WORD_QUBITS};
