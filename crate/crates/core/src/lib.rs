//! Riemannian gradient flows over the special unitary group for
//! variational energy minimization on small qubit registers.
//!
//! Core routines are generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the `*64` aliases below fix double precision, which is
//! what every tolerance in the documentation assumes.
//!
//! - [`pauli`]: Pauli words, sums, subspace bases and the text format.
//! - [`sim`]: statevector simulation and shot sampling.
//! - [`linalg`]: Hermitian eigendecomposition and `exp` of skew-Hermitian matrices.
//! - [`flows`]: exact, Trotterized, restricted and adaptive flows.
//! - [`vqe`]: parameter-shift gradient-descent baseline.
//! - [`oracle`]: exact diagonalization and gradient spectra.

pub mod error;
pub mod flows;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod scalar;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
pub use scalar::Real;

pub use flows::{FlowConfig, FlowMode, FlowTrace};
pub use oracle::GroundTruth;
pub use pauli::{PauliSum, PauliWord, SubspaceBasis};
pub use sim::{Gate, StateVector};
pub use vqe::ParamCircuit;

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type PauliSum64 = PauliSum<f64>;
pub type PauliSum32 = PauliSum<f32>;
pub type Gate64 = Gate<f64>;
pub type FlowConfig64 = FlowConfig<f64>;
pub type FlowTrace64 = FlowTrace<f64>;
pub type GroundTruth64 = GroundTruth<f64>;
pub type ParamCircuit64 = ParamCircuit<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
