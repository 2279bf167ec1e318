//! Euclidean-gradient VQE baseline: parameterized templates, parameter-shift
//! gradients and fixed-step gradient descent.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::chain_bonds;
use crate::oracle::{residual, GroundTruth};
use crate::pauli::{Letter, PauliSum, PauliWord};
use crate::scalar::Real;
use crate::sim::{Gate, StateVector};

/// Iteration stops once the gradient norm drops below this.
pub const VQE_GRADIENT_TOLERANCE: f64 = 1e-8;

/// Upper end of the uniform draw used by [`small_random_params`].
pub const SMALL_INIT_SCALE: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub enum CircuitOp<T> {
    Fixed(Gate<T>),
    /// `exp(−iθ_p K/2)` with `θ_p = params[param]`.
    Rotation { generator: PauliWord, param: usize },
}

/// Gate sequence whose rotations read angles from a shared parameter vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCircuit<T> {
    n_qubits: usize,
    ops: Vec<CircuitOp<T>>,
    n_params: usize,
}

impl<T: Real> ParamCircuit<T> {
    pub fn new(n_qubits: usize, ops: Vec<CircuitOp<T>>, n_params: usize) -> Result<Self> {
        let mut used = vec![false; n_params];
        for op in &ops {
            match op {
                CircuitOp::Fixed(g) => g.validate(n_qubits)?,
                CircuitOp::Rotation { generator, param } => {
                    Error::check_qubits(n_qubits, generator.n_qubits())?;
                    if generator.is_identity() {
                        return Err(Error::InvalidArgument(
                            "rotation generator must be a non-identity Pauli word".into(),
                        ));
                    }
                    let slot = used.get_mut(*param).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "parameter index {param} out of range for {n_params} parameters"
                        ))
                    })?;
                    *slot = true;
                }
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::InvalidArgument(format!(
                "parameter {unused} is not used by any gate"
            )));
        }
        Ok(Self {
            n_qubits,
            ops,
            n_params,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn ops(&self) -> &[CircuitOp<T>] {
        &self.ops
    }

    /// Concrete gates for a parameter vector.
    pub fn bind(&self, params: &[T]) -> Result<Vec<Gate<T>>> {
        self.check_params(params)?;
        Ok(self
            .ops
            .iter()
            .map(|op| match op {
                CircuitOp::Fixed(g) => g.clone(),
                CircuitOp::Rotation { generator, param } => {
                    Gate::PauliRotation(*generator, params[*param])
                }
            })
            .collect())
    }

    pub fn prepare(&self, params: &[T], initial: &StateVector<T>) -> Result<StateVector<T>> {
        self.prepare_shifted(params, initial, None)
    }

    pub fn energy(&self, params: &[T], initial: &StateVector<T>, h: &PauliSum<T>) -> Result<T> {
        self.prepare(params, initial)?.expectation(h)
    }

    /// Runs the circuit with one rotation occurrence offset by `shift`.
    fn prepare_shifted(
        &self,
        params: &[T],
        initial: &StateVector<T>,
        shift: Option<(usize, T)>,
    ) -> Result<StateVector<T>> {
        self.check_params(params)?;
        Error::check_qubits(self.n_qubits, initial.n_qubits())?;
        let mut state = initial.clone();
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                CircuitOp::Fixed(g) => state.apply(g)?,
                CircuitOp::Rotation { generator, param } => {
                    let mut angle = params[*param];
                    if let Some((at, delta)) = shift {
                        if at == i {
                            angle += delta;
                        }
                    }
                    state.apply_pauli_rotation(generator, angle)?;
                }
            }
        }
        Ok(state)
    }

    fn check_params(&self, params: &[T]) -> Result<()> {
        if params.len() != self.n_params {
            return Err(Error::DimensionMismatch {
                expected: self.n_params,
                found: params.len(),
            });
        }
        Ok(())
    }
}

/// Two-qubit circuit with shared angles `[α, β]`: `H⊗H`, `RZ(α)` on both
/// wires, `CNOT(0→1)`, `RZ(β)` on both wires.
pub fn template_fig3<T: Real>() -> ParamCircuit<T> {
    let z = |w| PauliWord::single(2, w, Letter::Z).expect("two-qubit word");
    let ops = vec![
        CircuitOp::Fixed(Gate::Hadamard(0)),
        CircuitOp::Fixed(Gate::Hadamard(1)),
        CircuitOp::Rotation {
            generator: z(0),
            param: 0,
        },
        CircuitOp::Rotation {
            generator: z(1),
            param: 0,
        },
        CircuitOp::Fixed(Gate::Cnot {
            control: 0,
            target: 1,
        }),
        CircuitOp::Rotation {
            generator: z(0),
            param: 1,
        },
        CircuitOp::Rotation {
            generator: z(1),
            param: 1,
        },
    ];
    ParamCircuit::new(2, ops, 2).expect("static template is valid")
}

/// Hamiltonian variational ansatz for the periodic TFIM: each layer applies
/// `exp(−iθ_ZZ Z_iZ_{i+1}/2)` over every ring bond, then `RX(θ_X)` on every
/// wire, with one shared angle per sublayer. Parameters are ordered
/// `[θ_ZZ,0, θ_X,0, θ_ZZ,1, θ_X,1, …]`. The `|+⟩^⊗N` preparation is left to
/// the caller.
pub fn template_hva_tfim<T: Real>(n_qubits: usize, n_layers: usize) -> Result<ParamCircuit<T>> {
    if n_qubits < 2 || n_qubits % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "HVA needs an even number of qubits >= 2, got {n_qubits}"
        )));
    }
    if n_layers == 0 {
        return Err(Error::InvalidArgument("HVA needs at least one layer".into()));
    }
    let mut ops = Vec::new();
    for layer in 0..n_layers {
        for (a, b) in chain_bonds(n_qubits, true) {
            ops.push(CircuitOp::Rotation {
                generator: PauliWord::from_letters(n_qubits, &[(a, Letter::Z), (b, Letter::Z)])?,
                param: 2 * layer,
            });
        }
        for q in 0..n_qubits {
            ops.push(CircuitOp::Rotation {
                generator: PauliWord::single(n_qubits, q, Letter::X)?,
                param: 2 * layer + 1,
            });
        }
    }
    ParamCircuit::new(n_qubits, ops, 2 * n_layers)
}

/// `n` angles drawn uniformly from `[0, scale)` with a seeded ChaCha8 stream.
pub fn small_random_params<T: Real>(n: usize, scale: f64, seed: u64) -> Vec<T> {
    if scale.is_nan() || scale <= 0.0 {
        return vec![T::zero(); n];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| T::lit(rng.random_range(0.0..scale))).collect()
}

/// `∂E/∂θ_i` by the two-term shift rule, summed over every gate sharing `θ_i`.
pub fn parameter_shift_gradient<T: Real>(
    circuit: &ParamCircuit<T>,
    params: &[T],
    h: &PauliSum<T>,
    initial: &StateVector<T>,
) -> Result<Vec<T>> {
    Error::check_qubits(circuit.n_qubits(), h.n_qubits())?;
    let shift = T::lit(FRAC_PI_2);
    let half = T::lit(0.5);
    let mut grad = vec![T::zero(); circuit.n_params()];
    for (i, op) in circuit.ops().iter().enumerate() {
        if let CircuitOp::Rotation { param, .. } = op {
            let plus = circuit
                .prepare_shifted(params, initial, Some((i, shift)))?
                .expectation(h)?;
            let minus = circuit
                .prepare_shifted(params, initial, Some((i, -shift)))?
                .expectation(h)?;
            grad[*param] += (plus - minus) * half;
        }
    }
    Ok(grad)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VqeRecord<T: Real> {
    pub iteration: usize,
    pub energy: T,
    pub residual: Option<T>,
    pub params: Vec<T>,
    pub gradient_norm: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VqeTrace<T: Real> {
    pub records: Vec<VqeRecord<T>>,
    /// Stopped on a vanishing gradient rather than the iteration cap.
    pub converged: bool,
}

impl<T: Real> VqeTrace<T> {
    pub fn final_energy(&self) -> T {
        self.records.last().map(|r| r.energy).unwrap_or_else(T::zero)
    }

    pub fn final_residual(&self) -> Option<T> {
        self.records.last().and_then(|r| r.residual)
    }
}

/// Plain gradient descent `θ ← θ − ε∇E(θ)`; one record per iterate,
/// including the starting point.
pub fn vqe_run<T: Real>(
    circuit: &ParamCircuit<T>,
    params0: &[T],
    h: &PauliSum<T>,
    initial: &StateVector<T>,
    step_size: T,
    max_iters: usize,
    oracle: Option<&GroundTruth<T>>,
) -> Result<VqeTrace<T>> {
    if !(step_size.is_finite() && step_size > T::zero()) {
        return Err(Error::InvalidConfig(format!(
            "VQE step size must be positive, got {step_size}"
        )));
    }
    let mut params = params0.to_vec();
    let mut records = Vec::new();
    let tol = T::tolerance(VQE_GRADIENT_TOLERANCE);
    let mut converged = false;
    for iteration in 0..=max_iters {
        let energy = circuit.energy(&params, initial, h)?;
        let grad = parameter_shift_gradient(circuit, &params, h, initial)?;
        let gradient_norm = grad.iter().fold(T::zero(), |acc, g| acc + *g * *g).sqrt();
        records.push(VqeRecord {
            iteration,
            energy,
            residual: oracle.map(|gt| residual(energy, gt)),
            params: params.clone(),
            gradient_norm,
        });
        if gradient_norm < tol {
            converged = true;
            break;
        }
        if iteration == max_iters {
            break;
        }
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= step_size * *g;
        }
    }
    Ok(VqeTrace { records, converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli_sum;

    #[test]
    fn single_rx_gradient() {
        let x0 = PauliWord::single(1, 0, Letter::X).unwrap();
        let c = ParamCircuit::new(
            1,
            vec![CircuitOp::Rotation {
                generator: x0,
                param: 0,
            }],
            1,
        )
        .unwrap();
        let z = parse_pauli_sum::<f64>("Z0").unwrap();
        let zero = StateVector::zero(1).unwrap();
        let g0 = parameter_shift_gradient(&c, &[0.0], &z, &zero).unwrap();
        assert!(g0[0].abs() < 1e-14);
        let g1 = parameter_shift_gradient(&c, &[FRAC_PI_2], &z, &zero).unwrap();
        assert!((g1[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn template_shapes() {
        let c = template_fig3::<f64>();
        assert_eq!((c.n_qubits(), c.n_params(), c.ops().len()), (2, 2, 7));
        let hva = template_hva_tfim::<f64>(4, 2).unwrap();
        assert_eq!(hva.n_params(), 4);
        assert_eq!(template_hva_tfim::<f64>(2, 1).unwrap().n_params(), 2);
        assert!(template_hva_tfim::<f64>(3, 1).is_err());
    }

    #[test]
    fn circuit_validation() {
        let z = PauliWord::single(1, 0, Letter::Z).unwrap();
        let rot = |param| CircuitOp::<f64>::Rotation {
            generator: z,
            param,
        };
        assert!(ParamCircuit::new(1, vec![rot(1)], 1).is_err());
        assert!(ParamCircuit::new(1, vec![rot(0)], 2).is_err());
        assert!(ParamCircuit::<f64>::new(1, vec![CircuitOp::Fixed(Gate::Hadamard(1))], 0).is_err());
        let id = PauliWord::identity(1).unwrap();
        assert!(ParamCircuit::<f64>::new(
            1,
            vec![CircuitOp::Rotation {
                generator: id,
                param: 0
            }],
            1
        )
        .is_err());
    }

    #[test]
    fn stationary_start_makes_no_updates() {
        let x0 = PauliWord::single(1, 0, Letter::X).unwrap();
        let c = ParamCircuit::new(
            1,
            vec![CircuitOp::Rotation {
                generator: x0,
                param: 0,
            }],
            1,
        )
        .unwrap();
        let z = parse_pauli_sum::<f64>("Z0").unwrap();
        let trace = vqe_run(&c, &[0.0], &z, &StateVector::zero(1).unwrap(), 0.1, 20, None).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.records[0].params, vec![0.0]);
    }
}
