use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flows::coefficient::{coefficients, projected_norm, CoefficientMethod, Estimator};
use crate::flows::step::{
    adaptive_from_coefficients, apply_trotter, generator_dense, perturb, retract, AdaptiveOptions,
    AdaptiveStep, StepStrategy, MAX_DENSE_FLOW_QUBITS,
};
use crate::linalg::{frobenius_norm, CMatrix};
use crate::oracle::{full_gradient, residual, GroundTruth};
use crate::pauli::{pauli_sum_to_dense, PauliSum, PauliWord, SubspaceBasis};
use crate::scalar::Real;
use crate::sim::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlowMode {
    /// `exp(εΩ)` as a dense unitary.
    ExactDense,
    /// Trotterized flow over all `4^N − 1` words with `η = ε / 2^N`.
    TrotterFull,
    /// Trotterized flow over the configured subspace with `η = ε`.
    TrotterRestricted,
    /// One rotation per step along the largest pool coefficient.
    Adaptive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perturbation<T> {
    pub sigma: T,
    pub max_attempts: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowConfig<T: Real> {
    pub mode: FlowMode,
    pub step_size: T,
    pub max_steps: usize,
    pub subspace: Option<SubspaceBasis>,
    pub coefficient_method: CoefficientMethod,
    /// Zero means exact expectation values.
    pub shots: u64,
    pub shot_seed: u64,
    pub grad_tolerance: T,
    /// Residual below which a vanishing gradient counts as convergence.
    pub energy_tolerance: T,
    pub perturbation: Option<Perturbation<T>>,
    pub step_strategy: StepStrategy,
    /// Attach the full-basis gradient to every record.
    pub record_spectrum: bool,
}

impl<T: Real> FlowConfig<T> {
    pub fn new(mode: FlowMode, step_size: T, max_steps: usize) -> Self {
        Self {
            mode,
            step_size,
            max_steps,
            subspace: None,
            coefficient_method: CoefficientMethod::ExactCommutator,
            shots: 0,
            shot_seed: 0,
            grad_tolerance: T::tolerance(1e-6),
            energy_tolerance: T::lit(1e-3),
            perturbation: None,
            step_strategy: StepStrategy::Fixed,
            record_spectrum: false,
        }
    }

    pub fn with_subspace(mut self, basis: SubspaceBasis) -> Self {
        self.subspace = Some(basis);
        self
    }

    pub fn with_strategy(mut self, strategy: StepStrategy) -> Self {
        self.step_strategy = strategy;
        self
    }

    pub fn with_perturbation(mut self, p: Perturbation<T>) -> Self {
        self.perturbation = Some(p);
        self
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.step_size.is_finite() && self.step_size > T::zero()) {
            return bad(format!("step size must be positive, got {}", self.step_size));
        }
        if self.max_steps == 0 {
            return bad("max_steps must be at least 1".into());
        }
        if !(self.grad_tolerance.is_finite() && self.grad_tolerance > T::zero()) {
            return bad("grad_tolerance must be positive".into());
        }
        if !(self.energy_tolerance.is_finite() && self.energy_tolerance > T::zero()) {
            return bad("energy_tolerance must be positive".into());
        }
        match self.mode {
            FlowMode::TrotterRestricted | FlowMode::Adaptive => match &self.subspace {
                None => return bad(format!("{:?} mode requires a subspace", self.mode)),
                Some(b) if b.n_qubits() != n_qubits => {
                    return bad(format!(
                        "subspace acts on {} qubits, problem has {n_qubits}",
                        b.n_qubits()
                    ))
                }
                Some(b) if b.is_empty() => return bad("subspace is empty".into()),
                _ => {}
            },
            FlowMode::ExactDense | FlowMode::TrotterFull => {
                if n_qubits > MAX_DENSE_FLOW_QUBITS {
                    return Err(Error::SizeGuard {
                        what: "full-basis flow",
                        n_qubits,
                        limit: MAX_DENSE_FLOW_QUBITS,
                    });
                }
            }
        }
        if self.step_strategy == StepStrategy::Rotosolve && self.mode != FlowMode::Adaptive {
            return bad("the rotosolve strategy requires adaptive mode".into());
        }
        if self.mode == FlowMode::ExactDense && self.shots > 0 {
            return bad("shot sampling does not apply to the dense flow".into());
        }
        if let Some(p) = &self.perturbation {
            if !(p.sigma.is_finite() && p.sigma > T::zero()) {
                return bad("perturbation sigma must be positive".into());
            }
            if p.max_attempts == 0 {
                return bad("perturbation max_attempts must be at least 1".into());
            }
            if n_qubits > MAX_DENSE_FLOW_QUBITS {
                return Err(Error::SizeGuard {
                    what: "dense perturbation",
                    n_qubits,
                    limit: MAX_DENSE_FLOW_QUBITS,
                });
            }
        }
        if self.record_spectrum && n_qubits > MAX_DENSE_FLOW_QUBITS {
            return Err(Error::SizeGuard {
                what: "gradient spectrum",
                n_qubits,
                limit: MAX_DENSE_FLOW_QUBITS,
            });
        }
        Ok(())
    }
}

/// The state after `step` iterations and the move that produced it.
///
/// Energy, residual, gradient norm and coefficients are evaluated at this
/// state; `appended_gates` and `dense_unitaries` describe the transition from
/// the previous record.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowStepRecord<T: Real> {
    pub step: usize,
    pub energy: T,
    pub residual: Option<T>,
    pub gradient_norm: T,
    pub coefficients: Vec<(PauliWord, T)>,
    pub appended_gates: Vec<(PauliWord, T)>,
    /// Dense unitaries applied in the transition (exact step or perturbation).
    pub dense_unitaries: usize,
    /// Cumulative number of perturbations applied so far.
    pub perturbations_used: usize,
    /// Signed full-basis coefficients, when requested.
    pub spectrum: Option<Vec<(PauliWord, T)>>,
}

impl<T: Real> FlowStepRecord<T> {
    /// The single word appended by an adaptive step.
    pub fn selected(&self) -> Option<(PauliWord, T)> {
        match self.appended_gates.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    MaxSteps,
    Stalled,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::MaxSteps => "max_steps",
            Termination::Stalled => "stalled",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrace<T: Real> {
    pub config: FlowConfig<T>,
    pub records: Vec<FlowStepRecord<T>>,
    pub final_state: StateVector<T>,
    pub termination: Termination,
}

impl<T: Real> FlowTrace<T> {
    pub fn final_energy(&self) -> T {
        self.records.last().map(|r| r.energy).unwrap_or_else(T::zero)
    }

    pub fn total_gates(&self) -> usize {
        self.records.iter().map(|r| r.appended_gates.len()).sum()
    }

    /// True when every transition is a Pauli rotation, so the trace can be
    /// rebuilt from its gate list.
    pub fn is_replayable(&self) -> bool {
        self.records.iter().all(|r| r.dense_unitaries == 0)
    }

    /// States after each record, rebuilt from the appended gates.
    pub fn replay(&self, initial: &StateVector<T>) -> Result<Vec<StateVector<T>>> {
        if !self.is_replayable() {
            return Err(Error::InvalidArgument(
                "trace contains dense unitaries and cannot be replayed from gates".into(),
            ));
        }
        let mut state = initial.clone();
        let mut states = Vec::with_capacity(self.records.len());
        for r in &self.records {
            for (word, theta) in &r.appended_gates {
                state.apply_pauli_rotation(word, *theta)?;
            }
            states.push(state.clone());
        }
        Ok(states)
    }
}

struct Gradient<T: Real> {
    norm: T,
    /// Quantity compared against the gradient tolerance.
    stall_metric: T,
    coefficients: Vec<(PauliWord, T)>,
    omega: Option<CMatrix<T>>,
}

/// Iterates the configured flow from `initial` until convergence, stall or
/// `max_steps`.
///
/// A vanishing gradient with residual above `energy_tolerance` is a saddle;
/// if a perturbation policy is configured, a random Lie-algebra kick is
/// applied (one per record) until the gradient revives or attempts run out.
pub fn run_flow<T: Real>(
    initial: &StateVector<T>,
    h: &PauliSum<T>,
    config: &FlowConfig<T>,
    oracle: Option<&GroundTruth<T>>,
) -> Result<FlowTrace<T>> {
    let n = h.n_qubits();
    Error::check_qubits(n, initial.n_qubits())?;
    config.validate(n)?;

    let basis = match config.mode {
        FlowMode::TrotterFull => Some(SubspaceBasis::full(n)?),
        FlowMode::TrotterRestricted | FlowMode::Adaptive => config.subspace.clone(),
        FlowMode::ExactDense => None,
    };
    let dense_h = match config.mode {
        FlowMode::ExactDense => Some(pauli_sum_to_dense(h)?),
        _ => None,
    };
    let learning_rate = match config.mode {
        FlowMode::TrotterFull => config.step_size / T::lit((1u64 << n) as f64),
        _ => config.step_size,
    };
    let adaptive = AdaptiveOptions {
        method: config.coefficient_method,
        grad_tolerance: config.grad_tolerance,
        strategy: config.step_strategy,
        learning_rate,
    };

    let mut estimator = Estimator::sampled(config.shots, config.shot_seed);
    let mut kick_rng = config
        .perturbation
        .map(|p| ChaCha8Rng::seed_from_u64(p.seed));

    let mut state = initial.clone();
    let mut records = Vec::new();
    let mut pending_gates: Vec<(PauliWord, T)> = Vec::new();
    let mut pending_dense = 0usize;
    let mut perturbations = 0usize;

    let termination = loop {
        let step = records.len();
        let grad = match (&dense_h, &basis) {
            (Some(hd), _) => {
                let omega = generator_dense(&state, hd);
                let norm = frobenius_norm(&omega);
                Gradient {
                    norm,
                    stall_metric: norm,
                    coefficients: Vec::new(),
                    omega: Some(omega),
                }
            }
            (None, Some(b)) => {
                let coeffs = coefficients(&state, h, b, config.coefficient_method, &mut estimator)?;
                let norm = projected_norm(n, &coeffs);
                let stall_metric = if config.mode == FlowMode::Adaptive {
                    coeffs.iter().fold(T::zero(), |m, (_, c)| m.max(c.abs()))
                } else {
                    norm
                };
                Gradient {
                    norm,
                    stall_metric,
                    coefficients: coeffs,
                    omega: None,
                }
            }
            (None, None) => unreachable!("validated configuration"),
        };
        let energy = state.expectation(h)?;
        let res = oracle.map(|gt| residual(energy, gt));
        let spectrum = if config.record_spectrum {
            Some(full_gradient(&state, h)?)
        } else {
            None
        };
        records.push(FlowStepRecord {
            step,
            energy,
            residual: res,
            gradient_norm: grad.norm,
            coefficients: grad.coefficients.clone(),
            appended_gates: std::mem::take(&mut pending_gates),
            dense_unitaries: std::mem::take(&mut pending_dense),
            perturbations_used: perturbations,
            spectrum,
        });

        if step == config.max_steps {
            break Termination::MaxSteps;
        }

        if grad.stall_metric < config.grad_tolerance {
            if res.is_none_or(|r| r < config.energy_tolerance) {
                break Termination::Converged;
            }
            match (&config.perturbation, kick_rng.as_mut()) {
                (Some(p), Some(rng)) if perturbations < p.max_attempts => {
                    state = perturb(&state, p.sigma, rng)?;
                    perturbations += 1;
                    pending_dense = 1;
                    continue;
                }
                _ => break Termination::Stalled,
            }
        }

        match config.mode {
            FlowMode::ExactDense => {
                let omega = grad.omega.as_ref().expect("dense gradient");
                state = retract(&state, omega, config.step_size)?;
                pending_dense = 1;
            }
            FlowMode::TrotterFull | FlowMode::TrotterRestricted => {
                let (next, gates) = apply_trotter(&state, &grad.coefficients, learning_rate)?;
                state = next;
                pending_gates = gates;
            }
            FlowMode::Adaptive => {
                let e_zero = if estimator.is_exact() {
                    energy
                } else {
                    estimator.expectation(&state, h)?
                };
                match adaptive_from_coefficients(
                    &state,
                    h,
                    grad.coefficients,
                    e_zero,
                    &adaptive,
                    &mut estimator,
                )? {
                    AdaptiveStep::Applied {
                        state: next,
                        word,
                        theta,
                        ..
                    } => {
                        state = next;
                        pending_gates = vec![(word, theta)];
                    }
                    AdaptiveStep::Stalled { .. } => unreachable!("stall handled above"),
                }
            }
        }
    };

    Ok(FlowTrace {
        config: config.clone(),
        records,
        final_state: state,
        termination,
    })
}
