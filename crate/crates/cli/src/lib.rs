//! Command-line front end for `riemflow`: experiment presets, config-driven runs
//! and exact ground-state reports.

pub mod config;
pub mod error;
pub mod presets;
pub mod runner;
pub mod trace;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use riemflow::oracle::ground_truth;

pub use config::{parse_configs, RunConfig};
pub use error::CliError;
pub use presets::{preset_configs, PRESET_NAMES};
pub use runner::{run_all, RunSummary};

/// Runs a preset, writing its traces under `out_dir`.
pub fn run_preset(name: &str, seed: u64, shots: u64, out_dir: &Path) -> Result<Vec<RunSummary>, CliError> {
    run_all(&preset_configs(name, seed, shots)?, None, out_dir)
}

/// Runs every config in a JSON file; relative output paths resolve against
/// `out_dir`.
pub fn run_config_file(path: &Path, out_dir: &Path) -> Result<Vec<RunSummary>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let configs = parse_configs(&text)?;
    run_all(&configs, Some(&text), out_dir)
}

/// Exact spectrum summary for a Hamiltonian given as Pauli text, a JSON model
/// object such as `{"tfim":{"n":4}}`, or the shorthand `tfim:N[:g]`.
pub fn ground_report(spec: &str, n_qubits: Option<usize>) -> Result<String, CliError> {
    let h = runner::build_hamiltonian(&parse_hamiltonian_arg(spec)?, n_qubits, None)?;
    let gt = ground_truth(&h).map_err(|e| CliError::from_core("ground", e))?;
    let mut s = String::new();
    let _ = writeln!(s, "hamiltonian: {h}");
    let _ = writeln!(s, "n_qubits: {}", h.n_qubits());
    let _ = writeln!(s, "ground_energy: {:?}", gt.ground_energy);
    let _ = writeln!(s, "degeneracy: {}", gt.degeneracy);
    let _ = writeln!(s, "spectral_norm: {:?}", gt.spectral_norm);
    let lowest: Vec<String> = gt.eigenvalues.iter().take(8).map(|e| format!("{e:.12}")).collect();
    let _ = writeln!(s, "lowest_eigenvalues: {}", lowest.join(" "));
    Ok(s)
}

fn parse_hamiltonian_arg(spec: &str) -> Result<config::HamiltonianSpec, CliError> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let model: config::ModelSpec = serde_json::from_str(trimmed)
            .map_err(|e| CliError::Validation(format!("model: {e}")))?;
        return Ok(config::HamiltonianSpec::Model(model));
    }
    if let Some(rest) = trimmed.strip_prefix("tfim:") {
        let mut parts = rest.split(':');
        let bad = || CliError::Validation(format!("model: expected tfim:N[:g], got '{trimmed}'"));
        let n = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let g = match parts.next() {
            Some(p) => p.parse().map_err(|_| bad())?,
            None => 1.0,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        return Ok(config::HamiltonianSpec::Model(config::ModelSpec::Tfim { n, g, periodic: true }));
    }
    Ok(config::HamiltonianSpec::Text(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_report_variants() {
        let r = ground_report("X0 + X1 + Y1", None).unwrap();
        assert!(r.contains("ground_energy: -2.41421356237309"), "{r}");
        let a = ground_report("tfim:4", None).unwrap();
        let b = ground_report(r#"{"tfim":{"n":4,"g":1.0,"periodic":true}}"#, None).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("degeneracy: 1"));
        assert!(ground_report("tfim:x", None).is_err());
        let err = ground_report("X9 +", None).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
