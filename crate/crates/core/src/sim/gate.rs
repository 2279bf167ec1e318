use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliWord};
use crate::scalar::Real;

/// Gates understood by the statevector kernels.
///
/// Rotations follow `R_K(θ) = exp(−iθK/2)`, so `Rx(w, θ)` is the Pauli
/// rotation generated by `X_w`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate<T> {
    Hadamard(usize),
    Cnot { control: usize, target: usize },
    Rx(usize, T),
    Ry(usize, T),
    Rz(usize, T),
    PauliRotation(PauliWord, T),
}

impl<T: Real> Gate<T> {
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let check = |wire: usize| {
            if wire < n_qubits {
                Ok(())
            } else {
                Err(Error::WireOutOfRange { wire, n_qubits })
            }
        };
        let finite = |angle: T| {
            if angle.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument("non-finite rotation angle".into()))
            }
        };
        match self {
            Gate::Hadamard(w) => check(*w),
            Gate::Cnot { control, target } => {
                check(*control)?;
                check(*target)?;
                if control == target {
                    return Err(Error::InvalidArgument(
                        "CNOT control and target coincide".into(),
                    ));
                }
                Ok(())
            }
            Gate::Rx(w, a) | Gate::Ry(w, a) | Gate::Rz(w, a) => {
                check(*w)?;
                finite(*a)
            }
            Gate::PauliRotation(word, a) => {
                Error::check_qubits(n_qubits, word.n_qubits())?;
                finite(*a)
            }
        }
    }

    /// Generator word and angle when the gate is a Pauli rotation.
    pub fn as_rotation(&self, n_qubits: usize) -> Result<Option<(PauliWord, T)>> {
        let single = |w: usize, l: Letter| PauliWord::single(n_qubits, w, l);
        Ok(match self {
            Gate::Rx(w, a) => Some((single(*w, Letter::X)?, *a)),
            Gate::Ry(w, a) => Some((single(*w, Letter::Y)?, *a)),
            Gate::Rz(w, a) => Some((single(*w, Letter::Z)?, *a)),
            Gate::PauliRotation(word, a) => Some((*word, *a)),
            _ => None,
        })
    }
}

impl<T: Real> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Hadamard(w) => write!(f, "H({w})"),
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::Rx(w, a) => write!(f, "RX({w}, {a})"),
            Gate::Ry(w, a) => write!(f, "RY({w}, {a})"),
            Gate::Rz(w, a) => write!(f, "RZ({w}, {a})"),
            Gate::PauliRotation(word, a) => write!(f, "R[{word}]({a})"),
        }
    }
}
