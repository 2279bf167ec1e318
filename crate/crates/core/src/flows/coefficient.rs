use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliWord, SubspaceBasis};
use crate::scalar::Real;
use crate::sim::StateVector;

/// How a Riemannian gradient coefficient is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoefficientMethod {
    /// Expectation of the Hermitian operator `-i[H, K]`, built term by term.
    #[default]
    ExactCommutator,
    /// Difference of two energies with a `±π/2` rotation about `K` appended.
    ParameterShift,
}

/// Source of expectation values: exact, or shot-sampled with a seeded stream.
#[derive(Clone, Debug)]
pub struct Estimator {
    shots: u64,
    rng: ChaCha8Rng,
}

impl Estimator {
    pub fn exact() -> Self {
        Self::sampled(0, 0)
    }

    /// `shots == 0` means exact evaluation.
    pub fn sampled(shots: u64, seed: u64) -> Self {
        Self {
            shots,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.shots == 0
    }

    pub fn expectation<T: Real>(&mut self, state: &StateVector<T>, h: &PauliSum<T>) -> Result<T> {
        if self.shots == 0 {
            state.expectation(h)
        } else {
            let seed = self.rng.random::<u64>();
            state.expectation_sampled(h, self.shots, seed)
        }
    }
}

/// `c = -i⟨[H, K]⟩_ψ`, the expansion coefficient of the flow generator
/// `[ρ, H]` along the Lie-algebra direction `iK` (up to the `2^N` norm).
pub fn riemannian_coefficient<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    k: &PauliWord,
    method: CoefficientMethod,
) -> Result<T> {
    coefficient_with(state, h, k, method, &mut Estimator::exact())
}

pub fn coefficient_with<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    k: &PauliWord,
    method: CoefficientMethod,
    estimator: &mut Estimator,
) -> Result<T> {
    Error::check_qubits(state.n_qubits(), h.n_qubits())?;
    Error::check_qubits(state.n_qubits(), k.n_qubits())?;
    match method {
        CoefficientMethod::ExactCommutator => {
            let op = h.commutator_with(k)?;
            if op.is_empty() {
                return Ok(T::zero());
            }
            estimator.expectation(state, &op)
        }
        CoefficientMethod::ParameterShift => {
            // dE/dt of exp(-itK/2)|ψ⟩ at t = 0 is c/2, and the shift rule gives
            // dE/dt = (E(π/2) - E(-π/2)) / 2.
            let shift = T::lit(FRAC_PI_2);
            let mut plus = state.clone();
            plus.apply_pauli_rotation(k, shift)?;
            let mut minus = state.clone();
            minus.apply_pauli_rotation(k, -shift)?;
            Ok(estimator.expectation(&plus, h)? - estimator.expectation(&minus, h)?)
        }
    }
}

/// Coefficients for every word of `basis`, in basis order.
pub fn coefficients<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    basis: &SubspaceBasis,
    method: CoefficientMethod,
    estimator: &mut Estimator,
) -> Result<Vec<(PauliWord, T)>> {
    Error::check_qubits(state.n_qubits(), basis.n_qubits())?;
    basis
        .words()
        .iter()
        .map(|k| Ok((*k, coefficient_with(state, h, k, method, estimator)?)))
        .collect()
}

/// Frobenius norm of the projected generator: `sqrt(Σ c_j² / 2^N)`.
pub fn projected_norm<T: Real>(n_qubits: usize, coefficients: &[(PauliWord, T)]) -> T {
    let dim = T::lit((1u64 << n_qubits) as f64);
    (coefficients
        .iter()
        .fold(T::zero(), |acc, (_, c)| acc + *c * *c)
        / dim)
        .sqrt()
}
