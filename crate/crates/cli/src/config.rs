//! Run configuration: the JSON document accepted by `riemflow run` and
//! produced by `riemflow preset --emit-config`. Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub hamiltonian: HamiltonianSpec,
    /// Widens a text Hamiltonian to this many qubits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_qubits: Option<usize>,
    #[serde(default)]
    pub initial_circuit: InitialCircuit,
    pub optimizer: OptimizerSpec,
    #[serde(default)]
    pub seed: u64,
    pub output: OutputSpec,
}

/// Either Pauli-sum text such as `"X0 + 0.5 Z0 Z1"` or a named model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HamiltonianSpec {
    Text(String),
    Model(ModelSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Tfim {
        n: usize,
        #[serde(default = "one")]
        g: f64,
        #[serde(default = "yes")]
        periodic: bool,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCircuit {
    /// `|0…0⟩`
    #[default]
    Zero,
    /// A Hadamard on every wire.
    #[serde(alias = "hadamard")]
    Plus,
    /// The two-wire H, RZ(α), CNOT, RZ(β) circuit on `|00⟩`.
    Fig3 { alpha: f64, beta: f64 },
    /// Explicit gates applied to `|0…0⟩`.
    Gates(Vec<GateSpec>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateSpec {
    H { wire: usize },
    Cnot { control: usize, target: usize },
    Rx { wire: usize, angle: f64 },
    Ry { wire: usize, angle: f64 },
    Rz { wire: usize, angle: f64 },
    /// `exp(−i·angle·P/2)` for a Pauli word written like `"X0 Y2"`.
    Pauli { word: String, angle: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OptimizerSpec {
    Flow(FlowSpec),
    Vqe(VqeSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    ExactDense,
    TrotterFull,
    TrotterRestricted,
    Adaptive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodSpec {
    #[default]
    ExactCommutator,
    ParameterShift,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategySpec {
    #[default]
    Fixed,
    Rotosolve,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubspaceSpec {
    SingleQubit,
    TwoLocal {
        #[serde(default)]
        nearest_neighbor: bool,
        #[serde(default)]
        periodic: bool,
        #[serde(default)]
        include_singles: bool,
    },
    Full,
    Words(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub mode: ModeSpec,
    pub step_size: f64,
    pub max_steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceSpec>,
    #[serde(default)]
    pub coefficients: MethodSpec,
    /// Zero means exact expectation values.
    #[serde(default)]
    pub shots: u64,
    #[serde(default = "default_grad_tolerance")]
    pub grad_tolerance: f64,
    #[serde(default = "default_energy_tolerance")]
    pub energy_tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationSpec>,
    #[serde(default)]
    pub step_strategy: StrategySpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSpec {
    pub sigma: f64,
    pub max_attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AnsatzSpec {
    Fig3,
    Hva { layers: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqeSpec {
    pub ansatz: AnsatzSpec,
    /// Drawn uniformly from `[0, 0.1)` with the run seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_params: Option<Vec<f64>>,
    pub step_size: f64,
    pub max_iters: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: String,
    #[serde(default)]
    pub format: OutputFormat,
    /// Also write the full-basis gradient at every step (flows only).
    #[serde(default)]
    pub emit_spectrum: bool,
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

fn default_grad_tolerance() -> f64 {
    1e-6
}

fn default_energy_tolerance() -> f64 {
    1e-3
}

impl RunConfig {
    /// Compact JSON of everything except the output block; echoed into trace
    /// headers.
    pub fn echo(&self) -> String {
        let mut value = serde_json::to_value(self).expect("config serializes");
        if let Some(map) = value.as_object_mut() {
            map.remove("output");
        }
        value.to_string()
    }
}

/// Parses a config file holding one object or an array of objects.
pub fn parse_configs(text: &str) -> Result<Vec<RunConfig>, CliError> {
    let json_err = |e: serde_json::Error| CliError::Validation(format!("config: {e}"));
    if text.trim_start().starts_with('[') {
        let configs: Vec<RunConfig> = serde_json::from_str(text).map_err(json_err)?;
        if configs.is_empty() {
            return Err(CliError::Validation("config: empty array".into()));
        }
        Ok(configs)
    } else {
        Ok(vec![serde_json::from_str(text).map_err(json_err)?])
    }
}

/// 1-based line of the first occurrence of `needle` as a JSON string literal.
pub(crate) fn locate_string(source: &str, needle: &str) -> Option<usize> {
    let quoted = serde_json::to_string(needle).ok()?;
    let offset = source.find(&quoted)?;
    Some(source[..offset].matches('\n').count() + 1)
}
