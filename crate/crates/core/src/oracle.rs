//! Exact-diagonalization ground truth and gradient diagnostics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flows::{riemannian_coefficient, CoefficientMethod, MAX_DENSE_FLOW_QUBITS};
use crate::linalg::hermitian_eigen;
use crate::pauli::{pauli_sum_to_dense, PauliSum, PauliWord, SubspaceBasis, MAX_DENSE_QUBITS};
use crate::scalar::Real;
use crate::sim::StateVector;

/// Eigenvalues within this distance of `E₀` count toward the degeneracy.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth<T: Real> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    pub ground_energy: T,
    pub degeneracy: usize,
    pub ground_basis: Vec<StateVector<T>>,
    /// Largest eigenvalue magnitude.
    pub spectral_norm: T,
}

pub fn ground_truth<T: Real>(h: &PauliSum<T>) -> Result<GroundTruth<T>> {
    let n = h.n_qubits();
    Error::guard("exact diagonalization", n, MAX_DENSE_QUBITS)?;
    let dense = pauli_sum_to_dense(h)?;
    let eig = hermitian_eigen(&dense)?;
    let ground_energy = eig.eigenvalues[0];
    let tol = T::tolerance(DEGENERACY_TOLERANCE);
    let degeneracy = eig
        .eigenvalues
        .iter()
        .take_while(|e| (**e - ground_energy).abs() <= tol)
        .count();
    let ground_basis = (0..degeneracy)
        .map(|k| {
            let col = eig.eigenvectors.column(k);
            StateVector::from_amplitudes(n, col.iter().copied().collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let spectral_norm = ground_energy
        .abs()
        .max(eig.eigenvalues.last().copied().unwrap_or(ground_energy).abs());
    Ok(GroundTruth {
        eigenvalues: eig.eigenvalues,
        ground_energy,
        degeneracy,
        ground_basis,
        spectral_norm,
    })
}

/// Gap to the ground energy, `⟨H⟩ − E₀`, nonnegative for physical states.
pub fn residual<T: Real>(energy: T, gt: &GroundTruth<T>) -> T {
    energy - gt.ground_energy
}

/// Weight of `state` inside the ground space, `Σ_g |⟨g|ψ⟩|²`.
pub fn ground_space_fidelity<T: Real>(state: &StateVector<T>, gt: &GroundTruth<T>) -> Result<T> {
    gt.ground_basis.iter().try_fold(T::zero(), |acc, g| {
        if g.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: state.dim(),
            });
        }
        Ok(acc + g.inner(state)?.norm_sqr())
    })
}

/// Every Riemannian gradient coefficient over the full Pauli basis, as
/// `(word, |c|)` grouped by Pauli weight.
pub fn gradient_spectrum<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
) -> Result<BTreeMap<usize, Vec<(PauliWord, T)>>> {
    let mut out: BTreeMap<usize, Vec<(PauliWord, T)>> = BTreeMap::new();
    for (word, c) in full_gradient(state, h)? {
        out.entry(word.weight()).or_default().push((word, c.abs()));
    }
    Ok(out)
}

/// Signed coefficients over the full basis, in basis order.
pub fn full_gradient<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
) -> Result<Vec<(PauliWord, T)>> {
    Error::check_qubits(state.n_qubits(), h.n_qubits())?;
    Error::guard("gradient spectrum", state.n_qubits(), MAX_DENSE_FLOW_QUBITS)?;
    let basis = SubspaceBasis::full(state.n_qubits())?;
    basis
        .words()
        .iter()
        .map(|k| {
            Ok((
                *k,
                riemannian_coefficient(state, h, k, CoefficientMethod::ExactCommutator)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli_sum;

    #[test]
    fn single_z() {
        let gt = ground_truth(&parse_pauli_sum::<f64>("Z0").unwrap()).unwrap();
        assert!((gt.ground_energy + 1.0).abs() < 1e-12);
        assert_eq!(gt.degeneracy, 1);
        assert!((residual(1.0, &gt) - 2.0).abs() < 1e-12);
        assert_eq!(residual(gt.ground_energy, &gt), 0.0);
    }

    #[test]
    fn anticommuting_pair_is_doubly_degenerate() {
        let gt = ground_truth(&parse_pauli_sum::<f64>("X0 + Y0 Z1").unwrap()).unwrap();
        assert!((gt.ground_energy + 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(gt.degeneracy, 2);
        let g0 = &gt.ground_basis[0];
        let g1 = &gt.ground_basis[1];
        assert!(g0.inner(g1).unwrap().norm() < 1e-10);
    }

    #[test]
    fn fidelities() {
        let gt = ground_truth(&parse_pauli_sum::<f64>("Z0").unwrap()).unwrap();
        let one = StateVector::<f64>::basis(1, 1).unwrap();
        let zero = StateVector::<f64>::zero(1).unwrap();
        assert!((ground_space_fidelity(&one, &gt).unwrap() - 1.0).abs() < 1e-12);
        assert!(ground_space_fidelity(&zero, &gt).unwrap() < 1e-12);
        let plus = StateVector::<f64>::plus(1).unwrap();
        assert!((ground_space_fidelity(&plus, &gt).unwrap() - 0.5).abs() < 1e-12);
        assert!(ground_space_fidelity(&StateVector::<f64>::zero(2).unwrap(), &gt).is_err());
    }

    #[test]
    fn spectrum_of_x_on_zero() {
        let h = parse_pauli_sum::<f64>("X0").unwrap();
        let spec = gradient_spectrum(&StateVector::zero(1).unwrap(), &h).unwrap();
        let nonzero: Vec<_> = spec[&1].iter().filter(|(_, m)| *m > 1e-12).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0.to_string(), "Y0");
        assert!((nonzero[0].1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_vanishes_at_eigenstates() {
        let h = parse_pauli_sum::<f64>("Z0 Z1 + 0.3 Z1").unwrap();
        let spec = gradient_spectrum(&StateVector::basis(2, 2).unwrap(), &h).unwrap();
        assert!(spec.values().flatten().all(|(_, m)| *m < 1e-10));
    }
}
