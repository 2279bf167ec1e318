//! Built-in experiments. Each preset expands to plain run configs, so
//! `riemflow preset NAME --emit-config` followed by `riemflow run` gives the
//! same files as running the preset directly.

use crate::config::*;
use crate::error::CliError;

pub const PRESET_NAMES: [&str; 4] = ["fig3", "fig4", "fig5", "fig7"];

/// Learning rate of the two-direction restricted flow preset.
pub const FIG5_LEARNING_RATE: f64 = 0.02;
/// Gradient-descent iterations for the TFIM VQE comparison run.
pub const FIG7_VQE_ITERS: usize = 1000;
/// Stall threshold of the adaptive TFIM run.
pub const FIG7_GRAD_TOLERANCE: f64 = 1e-9;

fn flow(mode: ModeSpec, step_size: f64, max_steps: usize) -> FlowSpec {
    FlowSpec {
        mode,
        step_size,
        max_steps,
        subspace: None,
        coefficients: MethodSpec::ExactCommutator,
        shots: 0,
        grad_tolerance: 1e-6,
        energy_tolerance: 1e-3,
        perturbation: None,
        step_strategy: StrategySpec::Fixed,
    }
}

fn csv(path: &str) -> OutputSpec {
    OutputSpec {
        path: path.to_string(),
        format: OutputFormat::Csv,
        emit_spectrum: false,
    }
}

fn text(h: &str) -> HamiltonianSpec {
    HamiltonianSpec::Text(h.to_string())
}

/// Expands a preset. `shots > 0` switches Trotterized and adaptive flows to
/// sampled parameter-shift coefficients; dense flows and VQE stay exact.
pub fn preset_configs(name: &str, seed: u64, shots: u64) -> Result<Vec<RunConfig>, CliError> {
    let mut configs = match name {
        "fig3" => {
            let h = text("X0 + X1 + Y1");
            let init = InitialCircuit::Fig3 { alpha: 0.1, beta: 1.2 };
            vec![
                RunConfig {
                    hamiltonian: h.clone(),
                    n_qubits: None,
                    initial_circuit: init,
                    optimizer: OptimizerSpec::Flow(flow(ModeSpec::ExactDense, 0.5, 100)),
                    seed,
                    output: csv("fig3_riemannian.csv"),
                },
                RunConfig {
                    hamiltonian: h,
                    n_qubits: None,
                    initial_circuit: InitialCircuit::Zero,
                    optimizer: OptimizerSpec::Vqe(VqeSpec {
                        ansatz: AnsatzSpec::Fig3,
                        initial_params: Some(vec![0.1, 1.2]),
                        step_size: 0.5,
                        max_iters: 100,
                    }),
                    seed,
                    output: csv("fig3_vqe.csv"),
                },
            ]
        }
        "fig4" => {
            let mut f = flow(ModeSpec::ExactDense, 0.2, 100);
            f.perturbation = Some(PerturbationSpec {
                sigma: 0.1,
                max_attempts: 50,
            });
            vec![RunConfig {
                hamiltonian: text("X0 + Y0 + X1"),
                n_qubits: None,
                initial_circuit: InitialCircuit::Plus,
                optimizer: OptimizerSpec::Flow(f),
                seed,
                output: csv("fig4_riemannian.csv"),
            }]
        }
        "fig5" => {
            let mut f = flow(ModeSpec::TrotterRestricted, FIG5_LEARNING_RATE, 100);
            f.subspace = Some(SubspaceSpec::Words(vec!["Y0 Y1".into(), "Z0 Z1".into()]));
            vec![RunConfig {
                hamiltonian: text("X0 + Y0 Z1"),
                n_qubits: None,
                initial_circuit: InitialCircuit::Plus,
                optimizer: OptimizerSpec::Flow(f),
                seed,
                output: csv("fig5_restricted.csv"),
            }]
        }
        "fig7" => {
            let h = HamiltonianSpec::Model(ModelSpec::Tfim {
                n: 4,
                g: 1.0,
                periodic: true,
            });
            let mut f = flow(ModeSpec::Adaptive, 0.1, 200);
            f.subspace = Some(SubspaceSpec::TwoLocal {
                nearest_neighbor: false,
                periodic: false,
                include_singles: true,
            });
            f.step_strategy = StrategySpec::Rotosolve;
            f.grad_tolerance = FIG7_GRAD_TOLERANCE;
            let mut adaptive_out = csv("fig7_adaptive.csv");
            adaptive_out.emit_spectrum = true;
            vec![
                RunConfig {
                    hamiltonian: h.clone(),
                    n_qubits: None,
                    initial_circuit: InitialCircuit::Plus,
                    optimizer: OptimizerSpec::Flow(f),
                    seed,
                    output: adaptive_out,
                },
                RunConfig {
                    hamiltonian: h,
                    n_qubits: None,
                    initial_circuit: InitialCircuit::Plus,
                    optimizer: OptimizerSpec::Vqe(VqeSpec {
                        ansatz: AnsatzSpec::Hva { layers: 2 },
                        initial_params: None,
                        step_size: 0.01,
                        max_iters: FIG7_VQE_ITERS,
                    }),
                    seed,
                    output: csv("fig7_vqe.csv"),
                },
            ]
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown preset '{other}' (expected one of {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    if shots > 0 {
        for c in &mut configs {
            if let OptimizerSpec::Flow(f) = &mut c.optimizer {
                if f.mode != ModeSpec::ExactDense {
                    f.shots = shots;
                    f.coefficients = MethodSpec::ParameterShift;
                }
            }
        }
    }
    Ok(configs)
}
