//! Riemannian gradient flows on the unitary group.
//!
//! The flow generator at state `ρ = |ψ⟩⟨ψ|` is `Ω = [ρ, H]`. Expanding in
//! the Pauli basis, `Ω = 2^{-N} Σ_j c_j (iP_j)` with real coefficients
//! `c_j = −i⟨[H, P_j]⟩`. Every step appends `exp(εΩ)` (dense), or the product
//! of `exp(iηc_jP_j)` over a chosen subspace (Trotterized), to the circuit.
//! Energy decreases along the flow at rate `‖Ω‖_F²`.

mod coefficient;
mod driver;
mod step;

pub use coefficient::{
    coefficient_with, coefficients, projected_norm, riemannian_coefficient, CoefficientMethod,
    Estimator,
};
pub use driver::{
    run_flow, FlowConfig, FlowMode, FlowStepRecord, FlowTrace, Perturbation, Termination,
};
pub use step::{
    adaptive_flow_step, exact_flow_step, flow_generator, perturb, rotosolve_angle,
    trotter_flow_step, AdaptiveOptions, AdaptiveStep, StepStrategy, TrotterStep,
    MAX_DENSE_FLOW_QUBITS,
};
