//! Dense statevector simulation.

mod gate;
mod state;

pub use gate::Gate;
pub use state::{StateVector, MAX_STATE_QUBITS};
