//! Named model Hamiltonians.

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliSum, PauliTerm, PauliWord};
use crate::scalar::Real;

/// Bonds `(i, i+1)` of a chain, closing the ring when `periodic`.
pub fn chain_bonds(n_qubits: usize, periodic: bool) -> Vec<(usize, usize)> {
    let mut bonds: Vec<(usize, usize)> = (0..n_qubits.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    if periodic && n_qubits > 2 {
        bonds.push((n_qubits - 1, 0));
    }
    bonds
}

/// Transverse-field Ising chain `H = −Σ_i (Z_i Z_{i+1} + g X_i)`.
pub fn tfim<T: Real>(n_qubits: usize, g: T, periodic: bool) -> Result<PauliSum<T>> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument("TFIM needs at least two sites".into()));
    }
    let mut terms = Vec::new();
    for (a, b) in chain_bonds(n_qubits, periodic) {
        terms.push(PauliTerm::new(
            -T::one(),
            PauliWord::from_letters(n_qubits, &[(a, Letter::Z), (b, Letter::Z)])?,
        ));
    }
    for q in 0..n_qubits {
        terms.push(PauliTerm::new(-g, PauliWord::single(n_qubits, q, Letter::X)?));
    }
    PauliSum::new(n_qubits, terms)
}
