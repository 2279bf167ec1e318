use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::flows::coefficient::{coefficients, CoefficientMethod, Estimator};
use crate::linalg::{expm_skew_hermitian, frobenius_norm, CMatrix};
use crate::pauli::{pauli_sum_to_dense, PauliSum, PauliWord, SubspaceBasis};
use crate::scalar::{cplx, Real};
use crate::sim::StateVector;

/// Largest register handled by the dense flow and dense perturbations.
pub const MAX_DENSE_FLOW_QUBITS: usize = 8;

/// `Ω = ρH − Hρ` with `ρ = |ψ⟩⟨ψ|`.
pub fn flow_generator<T: Real>(state: &StateVector<T>, h: &PauliSum<T>) -> Result<CMatrix<T>> {
    Error::check_qubits(state.n_qubits(), h.n_qubits())?;
    Error::guard("dense flow", state.n_qubits(), MAX_DENSE_FLOW_QUBITS)?;
    let hd = pauli_sum_to_dense(h)?;
    Ok(generator_dense(state, &hd))
}

pub(crate) fn generator_dense<T: Real>(state: &StateVector<T>, hd: &CMatrix<T>) -> CMatrix<T> {
    // ρH − Hρ = |ψ⟩(H|ψ⟩)† − (H|ψ⟩)⟨ψ|, avoiding two dense products
    let psi = state.to_column();
    let hpsi = hd * &psi;
    &psi * hpsi.adjoint() - &hpsi * psi.adjoint()
}

/// One retracted step `|ψ⟩ ← exp(εΩ)|ψ⟩`; also returns `‖Ω‖_F`.
pub fn exact_flow_step<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    step_size: T,
) -> Result<(StateVector<T>, T)> {
    let omega = flow_generator(state, h)?;
    let norm = frobenius_norm(&omega);
    let next = retract(state, &omega, step_size)?;
    Ok((next, norm))
}

pub(crate) fn retract<T: Real>(
    state: &StateVector<T>,
    omega: &CMatrix<T>,
    step_size: T,
) -> Result<StateVector<T>> {
    let scaled = omega.map(|z| z * step_size);
    let u = expm_skew_hermitian(&scaled)?;
    let mut next = state.clone();
    next.apply_dense(&u)?;
    Ok(next)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrotterStep<T: Real> {
    pub state: StateVector<T>,
    /// `(K_j, θ_j)` in application order, each gate being `exp(−iθ_j K_j/2)`.
    pub gates: Vec<(PauliWord, T)>,
    pub coefficients: Vec<(PauliWord, T)>,
}

/// Trotterized flow over `basis`: all coefficients are taken at the current
/// state, then `exp(iηc_jK_j)` is appended for each word in basis order.
pub fn trotter_flow_step<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    basis: &SubspaceBasis,
    learning_rate: T,
    method: CoefficientMethod,
) -> Result<TrotterStep<T>> {
    let coeffs = coefficients(state, h, basis, method, &mut Estimator::exact())?;
    let (next, gates) = apply_trotter(state, &coeffs, learning_rate)?;
    Ok(TrotterStep {
        state: next,
        gates,
        coefficients: coeffs,
    })
}

/// `(generator, angle)` pairs in application order.
pub(crate) type GateList<T> = Vec<(PauliWord, T)>;

pub(crate) fn apply_trotter<T: Real>(
    state: &StateVector<T>,
    coeffs: &[(PauliWord, T)],
    learning_rate: T,
) -> Result<(StateVector<T>, GateList<T>)> {
    let minus_two_eta = T::lit(-2.0) * learning_rate;
    let mut next = state.clone();
    let mut gates = Vec::with_capacity(coeffs.len());
    for (word, c) in coeffs {
        let theta = minus_two_eta * *c;
        next.apply_pauli_rotation(word, theta)?;
        gates.push((*word, theta));
    }
    Ok((next, gates))
}

/// Minimizer of `E(θ) = a + b cos θ + c sin θ` from `E(0)`, `E(π/2)`, `E(−π/2)`.
///
/// Returns an angle in `(−π, π]`; a flat landscape yields `0`.
pub fn rotosolve_angle<T: Real>(e_zero: T, e_plus: T, e_minus: T) -> T {
    let half = T::lit(0.5);
    let a = (e_plus + e_minus) * half;
    let b = e_zero - a;
    let c = (e_plus - e_minus) * half;
    if b == T::zero() && c == T::zero() {
        return T::zero();
    }
    let theta = (-c).atan2(-b);
    let pi = T::lit(PI);
    if theta <= -pi {
        theta + T::lit(2.0 * PI)
    } else {
        theta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum StepStrategy {
    /// `θ = −2ηc` along the selected direction.
    #[default]
    Fixed,
    /// Closed-form line minimization along the selected direction.
    Rotosolve,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AdaptiveStep<T: Real> {
    Applied {
        state: StateVector<T>,
        word: PauliWord,
        theta: T,
        coefficients: Vec<(PauliWord, T)>,
    },
    /// Every pool coefficient is below the gradient tolerance.
    Stalled { coefficients: Vec<(PauliWord, T)> },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveOptions<T> {
    pub method: CoefficientMethod,
    pub grad_tolerance: T,
    pub strategy: StepStrategy,
    /// Used by [`StepStrategy::Fixed`].
    pub learning_rate: T,
}

impl<T: Real> Default for AdaptiveOptions<T> {
    fn default() -> Self {
        Self {
            method: CoefficientMethod::ExactCommutator,
            grad_tolerance: T::tolerance(1e-6),
            strategy: StepStrategy::Rotosolve,
            learning_rate: T::lit(0.1),
        }
    }
}

/// Appends a single rotation along the pool word with the largest `|c|`.
pub fn adaptive_flow_step<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    pool: &SubspaceBasis,
    options: &AdaptiveOptions<T>,
) -> Result<AdaptiveStep<T>> {
    let mut estimator = Estimator::exact();
    let coeffs = coefficients(state, h, pool, options.method, &mut estimator)?;
    let e_zero = state.expectation(h)?;
    adaptive_from_coefficients(state, h, coeffs, e_zero, options, &mut estimator)
}

pub(crate) fn adaptive_from_coefficients<T: Real>(
    state: &StateVector<T>,
    h: &PauliSum<T>,
    coeffs: Vec<(PauliWord, T)>,
    e_zero: T,
    options: &AdaptiveOptions<T>,
    estimator: &mut Estimator,
) -> Result<AdaptiveStep<T>> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("empty operator pool".into()));
    }
    let Some(best) = select_largest(&coeffs, options.grad_tolerance) else {
        return Ok(AdaptiveStep::Stalled {
            coefficients: coeffs,
        });
    };
    let (word, c) = coeffs[best];
    let theta = match options.strategy {
        StepStrategy::Fixed => T::lit(-2.0) * options.learning_rate * c,
        StepStrategy::Rotosolve => {
            let shift = T::lit(FRAC_PI_2);
            let mut plus = state.clone();
            plus.apply_pauli_rotation(&word, shift)?;
            let mut minus = state.clone();
            minus.apply_pauli_rotation(&word, -shift)?;
            let e_plus = estimator.expectation(&plus, h)?;
            let e_minus = estimator.expectation(&minus, h)?;
            rotosolve_angle(e_zero, e_plus, e_minus)
        }
    };
    let mut next = state.clone();
    next.apply_pauli_rotation(&word, theta)?;
    Ok(AdaptiveStep::Applied {
        state: next,
        word,
        theta,
        coefficients: coeffs,
    })
}

/// Index of the largest `|c|`, first one on ties; `None` when all are below `tol`.
pub(crate) fn select_largest<T: Real>(coeffs: &[(PauliWord, T)], tol: T) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, (_, c)) in coeffs.iter().enumerate() {
        let m = c.abs();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((i, m));
        }
    }
    best.filter(|(_, m)| *m >= tol).map(|(i, _)| i)
}

/// Applies `exp(Ω)` for a random real antisymmetric `Ω = −(X − Xᵀ)/2`,
/// `X_ij ~ N(0, σ)`; i.e. `exp(iK)` with Hermitian `K = (i/2)(X − Xᵀ)`.
pub fn perturb<T: Real, R: Rng + ?Sized>(
    state: &StateVector<T>,
    sigma: T,
    rng: &mut R,
) -> Result<StateVector<T>> {
    Error::guard("dense perturbation", state.n_qubits(), MAX_DENSE_FLOW_QUBITS)?;
    let s = sigma.as_f64();
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidArgument(format!("invalid perturbation scale {s}")));
    }
    if s == 0.0 {
        return Ok(state.clone());
    }
    let dim = state.dim();
    let normal = Normal::new(0.0, s).expect("validated scale");
    let draws: Vec<f64> = (0..dim * dim).map(|_| normal.sample(rng)).collect();
    let x = |r: usize, c: usize| draws[r * dim + c];
    let omega = CMatrix::from_fn(dim, dim, |r, c| {
        cplx(T::lit(-0.5 * (x(r, c) - x(c, r))), T::zero())
    });
    let u = expm_skew_hermitian(&omega)?;
    let mut next = state.clone();
    next.apply_dense(&u)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli_sum;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h(text: &str) -> PauliSum<f64> {
        parse_pauli_sum(text).unwrap()
    }

    #[test]
    fn rotosolve_cosine() {
        let theta = rotosolve_angle(1.0, 0.0, 0.0);
        assert!((theta - PI).abs() < 1e-15);
        assert!((theta.cos() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotosolve_sine() {
        assert!((rotosolve_angle(0.0, 1.0, -1.0) + FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn rotosolve_flat() {
        assert_eq!(rotosolve_angle(0.3, 0.3, 0.3), 0.0);
    }

    #[test]
    fn exact_step_closed_form() {
        let x = h("X0");
        let zero = StateVector::<f64>::zero(1).unwrap();
        let (next, norm) = exact_flow_step(&zero, &x, std::f64::consts::FRAC_PI_4).unwrap();
        // Ω = iY has Frobenius norm √2
        assert!((norm - 2f64.sqrt()).abs() < 1e-12);
        assert!((next.expectation(&x).unwrap() + 1.0).abs() < 1e-12);
        let (next, _) = exact_flow_step(&zero, &x, 0.1).unwrap();
        assert!((next.expectation(&x).unwrap() + 0.2f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn exact_step_at_eigenstate() {
        let z = h("Z0");
        let zero = StateVector::<f64>::zero(1).unwrap();
        let (next, norm) = exact_flow_step(&zero, &z, 0.3).unwrap();
        assert_eq!(norm, 0.0);
        assert!(next.distance(&zero).unwrap() < 1e-14);
    }

    #[test]
    fn trotter_single_direction() {
        let x = h("X0");
        let y0 = PauliWord::single(1, 0, crate::pauli::Letter::Y).unwrap();
        let basis = SubspaceBasis::custom(1, [y0]).unwrap();
        let zero = StateVector::<f64>::zero(1).unwrap();
        let step =
            trotter_flow_step(&zero, &x, &basis, 0.1, CoefficientMethod::ExactCommutator).unwrap();
        assert_eq!(step.gates.len(), 1);
        assert!((step.gates[0].1 + 0.4).abs() < 1e-12);
        assert!((step.state.expectation(&x).unwrap() + 0.4f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn trotter_at_eigenstate_is_inert() {
        let z = h("Z0 + 0.5 Z1");
        let basis = SubspaceBasis::full(2).unwrap();
        let zero = StateVector::<f64>::zero(2).unwrap();
        let step =
            trotter_flow_step(&zero, &z, &basis, 0.3, CoefficientMethod::ExactCommutator).unwrap();
        assert!(step.gates.iter().all(|(_, a)| a.abs() < 1e-14));
        assert!(step.state.distance(&zero).unwrap() < 1e-14);
    }

    #[test]
    fn adaptive_picks_y() {
        let x = h("X0");
        let pool = SubspaceBasis::single_qubit(1).unwrap();
        let zero = StateVector::<f64>::zero(1).unwrap();
        match adaptive_flow_step(&zero, &x, &pool, &AdaptiveOptions::default()).unwrap() {
            AdaptiveStep::Applied {
                state, word, theta, ..
            } => {
                assert_eq!(word.to_string(), "Y0");
                assert!((theta + FRAC_PI_2).abs() < 1e-12);
                assert!((state.expectation(&x).unwrap() + 1.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adaptive_stalls_at_eigenstate() {
        let z = h("Z0");
        let pool = SubspaceBasis::single_qubit(1).unwrap();
        let zero = StateVector::<f64>::zero(1).unwrap();
        let step = adaptive_flow_step(&zero, &z, &pool, &AdaptiveOptions::default()).unwrap();
        assert!(matches!(step, AdaptiveStep::Stalled { .. }));
    }

    #[test]
    fn perturbation_contract() {
        let s = StateVector::<f64>::plus(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(perturb(&s, 0.0, &mut rng).unwrap(), s);
        let a = perturb(&s, 0.1, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = perturb(&s, 0.1, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(a.distance(&s).unwrap() > 1e-6);
        assert!(perturb(&s, -1.0, &mut rng).is_err());
    }
}
