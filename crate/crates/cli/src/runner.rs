//! Validation and execution of run configs.

use std::fmt;
use std::path::{Path, PathBuf};

use riemflow::flows::{run_flow, CoefficientMethod, FlowMode, Perturbation, StepStrategy};
use riemflow::oracle::ground_truth;
use riemflow::pauli::{parse_pauli_sum, parse_pauli_sum_with_qubits, MAX_DENSE_QUBITS};
use riemflow::vqe::{small_random_params, template_fig3, template_hva_tfim, vqe_run, VqeTrace, SMALL_INIT_SCALE};
use riemflow::{
    models, FlowConfig64, FlowTrace64, Gate64, GroundTruth64, ParamCircuit64, PauliSum64, PauliWord,
    StateVector64, SubspaceBasis,
};

use crate::config::*;
use crate::error::CliError;
use crate::trace;

/// Energies recomputed by replaying appended gates must match the records
/// to this tolerance.
pub const REPLAY_TOLERANCE: f64 = 1e-9;

/// A config that passed validation and is ready to execute.
#[derive(Clone, Debug)]
pub struct PreparedRun {
    pub config: RunConfig,
    pub hamiltonian: PauliSum64,
    pub initial: StateVector64,
    pub job: Job,
}

#[derive(Clone, Debug)]
pub enum Job {
    Flow(FlowConfig64),
    Vqe {
        circuit: ParamCircuit64,
        params: Vec<f64>,
        step_size: f64,
        max_iters: usize,
    },
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Flow(FlowTrace64),
    Vqe(VqeTrace<f64>),
}

/// Result of one executed config.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub prepared: PreparedRun,
    pub ground: Option<GroundTruth64>,
    pub outcome: Outcome,
}

/// One line of console output per written trace.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub path: PathBuf,
    pub kind: &'static str,
    pub rows: usize,
    pub final_energy: f64,
    pub final_residual: Option<f64>,
    pub termination: String,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} rows={} final_energy={:.10} termination={}",
            self.path.display(),
            self.kind,
            self.rows,
            self.final_energy,
            self.termination
        )?;
        if let Some(r) = self.final_residual {
            write!(f, " residual={r:.3e}")?;
        }
        Ok(())
    }
}

fn validation(context: &str, msg: impl fmt::Display) -> CliError {
    CliError::Validation(format!("{context}: {msg}"))
}

/// Builds a Hamiltonian from a config spec. `source` is the raw config text,
/// used to report the line of a bad expression.
pub fn build_hamiltonian(
    spec: &HamiltonianSpec,
    n_qubits: Option<usize>,
    source: Option<&str>,
) -> Result<PauliSum64, CliError> {
    match spec {
        HamiltonianSpec::Text(text) => {
            let context = match source.and_then(|s| crate::config::locate_string(s, text)) {
                Some(line) => format!("hamiltonian (line {line})"),
                None => "hamiltonian".to_string(),
            };
            let parsed = match n_qubits {
                Some(n) => parse_pauli_sum_with_qubits(text, n),
                None => parse_pauli_sum(text),
            };
            parsed.map_err(|e| CliError::from_core(&context, e))
        }
        HamiltonianSpec::Model(ModelSpec::Tfim { n, g, periodic }) => {
            if let Some(m) = n_qubits {
                if m != *n {
                    return Err(validation("n_qubits", format!("{m} conflicts with tfim size {n}")));
                }
            }
            models::tfim(*n, *g, *periodic).map_err(|e| CliError::from_core("hamiltonian", e))
        }
    }
}

fn parse_word(text: &str, n_qubits: usize, context: &str) -> Result<PauliWord, CliError> {
    let sum: PauliSum64 =
        parse_pauli_sum_with_qubits(text, n_qubits).map_err(|e| CliError::from_core(context, e))?;
    match sum.terms() {
        [t] if t.coefficient == 1.0 && !t.word.is_identity() => Ok(t.word),
        _ => Err(validation(context, format!("'{text}' is not a single Pauli word"))),
    }
}

fn build_initial(spec: &InitialCircuit, n: usize) -> Result<StateVector64, CliError> {
    let ctx = "initial_circuit";
    let core = |e| CliError::from_core(ctx, e);
    match spec {
        InitialCircuit::Zero => StateVector64::zero(n).map_err(core),
        InitialCircuit::Plus => StateVector64::plus(n).map_err(core),
        InitialCircuit::Fig3 { alpha, beta } => {
            if n != 2 {
                return Err(validation(ctx, format!("fig3 circuit needs 2 qubits, problem has {n}")));
            }
            let zero = StateVector64::zero(2).map_err(core)?;
            template_fig3().prepare(&[*alpha, *beta], &zero).map_err(core)
        }
        InitialCircuit::Gates(gates) => {
            let mut state = StateVector64::zero(n).map_err(core)?;
            for (i, g) in gates.iter().enumerate() {
                let gate = match g {
                    GateSpec::H { wire } => Gate64::Hadamard(*wire),
                    GateSpec::Cnot { control, target } => Gate64::Cnot {
                        control: *control,
                        target: *target,
                    },
                    GateSpec::Rx { wire, angle } => Gate64::Rx(*wire, *angle),
                    GateSpec::Ry { wire, angle } => Gate64::Ry(*wire, *angle),
                    GateSpec::Rz { wire, angle } => Gate64::Rz(*wire, *angle),
                    GateSpec::Pauli { word, angle } => {
                        Gate64::PauliRotation(parse_word(word, n, &format!("{ctx}.gates[{i}]"))?, *angle)
                    }
                };
                state
                    .apply(&gate)
                    .map_err(|e| CliError::from_core(&format!("{ctx}.gates[{i}]"), e))?;
            }
            Ok(state)
        }
    }
}

fn build_subspace(spec: &SubspaceSpec, n: usize) -> Result<SubspaceBasis, CliError> {
    let ctx = "optimizer.flow.subspace";
    let core = |e| CliError::from_core(ctx, e);
    match spec {
        SubspaceSpec::SingleQubit => SubspaceBasis::single_qubit(n).map_err(core),
        SubspaceSpec::TwoLocal {
            nearest_neighbor,
            periodic,
            include_singles,
        } => SubspaceBasis::two_local(n, *nearest_neighbor, *periodic, *include_singles).map_err(core),
        SubspaceSpec::Full => SubspaceBasis::full(n).map_err(core),
        SubspaceSpec::Words(words) => {
            let parsed = words
                .iter()
                .map(|w| parse_word(w, n, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            SubspaceBasis::custom(n, parsed).map_err(core)
        }
    }
}

fn build_flow(spec: &FlowSpec, config: &RunConfig, n: usize) -> Result<FlowConfig64, CliError> {
    let mode = match spec.mode {
        ModeSpec::ExactDense => FlowMode::ExactDense,
        ModeSpec::TrotterFull => FlowMode::TrotterFull,
        ModeSpec::TrotterRestricted => FlowMode::TrotterRestricted,
        ModeSpec::Adaptive => FlowMode::Adaptive,
    };
    let mut flow = FlowConfig64::new(mode, spec.step_size, spec.max_steps);
    match (&spec.subspace, mode) {
        (Some(s), FlowMode::TrotterRestricted | FlowMode::Adaptive) => {
            flow.subspace = Some(build_subspace(s, n)?)
        }
        (Some(_), _) => {
            return Err(validation(
                "optimizer.flow.subspace",
                "only trotter_restricted and adaptive modes take a subspace",
            ))
        }
        (None, _) => {}
    }
    flow.coefficient_method = match spec.coefficients {
        MethodSpec::ExactCommutator => CoefficientMethod::ExactCommutator,
        MethodSpec::ParameterShift => CoefficientMethod::ParameterShift,
    };
    flow.shots = spec.shots;
    flow.shot_seed = config.seed.wrapping_add(1);
    flow.grad_tolerance = spec.grad_tolerance;
    flow.energy_tolerance = spec.energy_tolerance;
    flow.perturbation = spec.perturbation.as_ref().map(|p| Perturbation {
        sigma: p.sigma,
        max_attempts: p.max_attempts,
        seed: config.seed,
    });
    flow.step_strategy = match spec.step_strategy {
        StrategySpec::Fixed => StepStrategy::Fixed,
        StrategySpec::Rotosolve => StepStrategy::Rotosolve,
    };
    flow.record_spectrum = config.output.emit_spectrum;
    flow.validate(n).map_err(|e| CliError::from_core("optimizer.flow", e))?;
    Ok(flow)
}

fn build_vqe(spec: &VqeSpec, config: &RunConfig, n: usize) -> Result<Job, CliError> {
    let ctx = "optimizer.vqe";
    let circuit = match spec.ansatz {
        AnsatzSpec::Fig3 => {
            if n != 2 {
                return Err(validation(ctx, format!("fig3 ansatz needs 2 qubits, problem has {n}")));
            }
            template_fig3()
        }
        AnsatzSpec::Hva { layers } => {
            template_hva_tfim(n, layers).map_err(|e| CliError::from_core(ctx, e))?
        }
    };
    let params = match &spec.initial_params {
        Some(p) if p.len() != circuit.n_params() => {
            return Err(validation(
                ctx,
                format!("ansatz takes {} parameters, {} given", circuit.n_params(), p.len()),
            ))
        }
        Some(p) => p.clone(),
        None => small_random_params(circuit.n_params(), SMALL_INIT_SCALE, config.seed),
    };
    if !(spec.step_size.is_finite() && spec.step_size > 0.0) {
        return Err(validation(ctx, "step_size must be positive"));
    }
    if spec.max_iters == 0 {
        return Err(validation(ctx, "max_iters must be at least 1"));
    }
    if config.output.emit_spectrum {
        return Err(validation("output.emit_spectrum", "only flow runs emit a gradient spectrum"));
    }
    Ok(Job::Vqe {
        circuit,
        params,
        step_size: spec.step_size,
        max_iters: spec.max_iters,
    })
}

/// Validates a config and builds everything needed to run it.
pub fn prepare(config: &RunConfig, source: Option<&str>) -> Result<PreparedRun, CliError> {
    if config.output.path.trim().is_empty() {
        return Err(validation("output.path", "must not be empty"));
    }
    let hamiltonian = build_hamiltonian(&config.hamiltonian, config.n_qubits, source)?;
    let n = hamiltonian.n_qubits();
    let initial = build_initial(&config.initial_circuit, n)?;
    let job = match &config.optimizer {
        OptimizerSpec::Flow(spec) => Job::Flow(build_flow(spec, config, n)?),
        OptimizerSpec::Vqe(spec) => build_vqe(spec, config, n)?,
    };
    Ok(PreparedRun {
        config: config.clone(),
        hamiltonian,
        initial,
        job,
    })
}

/// Runs a prepared config. Flow traces made of gates only are replayed and
/// checked against their recorded energies.
pub fn execute(prepared: &PreparedRun) -> Result<RunResult, CliError> {
    let h = &prepared.hamiltonian;
    let runtime = |e| CliError::from_core("run", e);
    let ground = if h.n_qubits() <= MAX_DENSE_QUBITS {
        Some(ground_truth(h).map_err(runtime)?)
    } else {
        None
    };
    let outcome = match &prepared.job {
        Job::Flow(cfg) => {
            let trace = run_flow(&prepared.initial, h, cfg, ground.as_ref()).map_err(runtime)?;
            if trace.is_replayable() {
                check_replay(&trace, &prepared.initial, h)?;
            }
            Outcome::Flow(trace)
        }
        Job::Vqe {
            circuit,
            params,
            step_size,
            max_iters,
        } => Outcome::Vqe(
            vqe_run(circuit, params, h, &prepared.initial, *step_size, *max_iters, ground.as_ref())
                .map_err(runtime)?,
        ),
    };
    Ok(RunResult {
        prepared: prepared.clone(),
        ground,
        outcome,
    })
}

fn check_replay(trace: &FlowTrace64, initial: &StateVector64, h: &PauliSum64) -> Result<(), CliError> {
    let runtime = |e| CliError::from_core("replay check", e);
    let states = trace.replay(initial).map_err(runtime)?;
    for (state, record) in states.iter().zip(&trace.records) {
        let e = state.expectation(h).map_err(runtime)?;
        if (e - record.energy).abs() > REPLAY_TOLERANCE {
            return Err(CliError::Runtime(format!(
                "replay check: step {} energy {} differs from replayed {}",
                record.step, record.energy, e
            )));
        }
    }
    Ok(())
}

pub fn resolve_output(out_dir: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out_dir.join(p)
    }
}

/// Validates every config first, then runs and writes them in order.
pub fn run_all(
    configs: &[RunConfig],
    source: Option<&str>,
    out_dir: &Path,
) -> Result<Vec<RunSummary>, CliError> {
    let prepared = configs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            prepare(c, source).map_err(|e| match e {
                CliError::Validation(m) if configs.len() > 1 => CliError::Validation(format!("config[{i}]: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut summaries = Vec::new();
    for p in &prepared {
        let result = execute(p)?;
        summaries.push(trace::write(&result, out_dir)?);
    }
    Ok(summaries)
}
