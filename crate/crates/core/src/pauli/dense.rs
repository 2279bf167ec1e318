use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{PauliSum, PauliWord};
use crate::scalar::{czero, Real};

/// Largest register converted to a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Dense `2^N x 2^N` matrix of a Pauli word, wire 0 as the leftmost factor.
pub fn word_to_dense<T: Real>(word: &PauliWord) -> Result<CMatrix<T>> {
    let n = word.n_qubits();
    Error::guard("dense conversion", n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, czero());
    accumulate(&mut m, word, T::one());
    Ok(m)
}

pub fn pauli_sum_to_dense<T: Real>(sum: &PauliSum<T>) -> Result<CMatrix<T>> {
    let n = sum.n_qubits();
    Error::guard("dense conversion", n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, czero());
    for term in sum.terms() {
        accumulate(&mut m, &term.word, term.coefficient);
    }
    Ok(m)
}

/// Adds `coefficient · P` into `m` column by column: `P|b> = phase(b) |b ^ x>`.
fn accumulate<T: Real>(m: &mut CMatrix<T>, word: &PauliWord, coefficient: T) {
    let (x, z) = word.index_masks();
    let base = crate::pauli::Phase::from_exponent(word.y_count()).to_complex::<T>();
    for b in 0..m.ncols() {
        let sign = if (b & z).count_ones() % 2 == 1 {
            -coefficient
        } else {
            coefficient
        };
        m[(b ^ x, b)] += base * sign;
    }
}
