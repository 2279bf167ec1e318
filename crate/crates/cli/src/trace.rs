//! Trace files: CSV or JSON rows per step, with a metadata header.
//!
//! Flow CSV columns: `step, energy, residual, grad_norm, n_appended_gates,
//! selected_word, theta, perturbations`. VQE CSV columns: `step, energy,
//! residual, grad_norm, params` with parameters joined by `;`. Metadata lines
//! start with `#`. The optional spectrum file has columns `step, weight,
//! word, coefficient` (signed full-basis coefficients).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use riemflow::flows::{FlowMode, FlowStepRecord};
use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::error::CliError;
use crate::runner::{resolve_output, Outcome, RunResult, RunSummary};

pub const TOOL: &str = concat!("riemflow-cli ", env!("CARGO_PKG_VERSION"));

pub const FLOW_COLUMNS: &str =
    "step,energy,residual,grad_norm,n_appended_gates,selected_word,theta,perturbations";
pub const VQE_COLUMNS: &str = "step,energy,residual,grad_norm,params";
pub const SPECTRUM_COLUMNS: &str = "step,weight,word,coefficient";

/// Shortest round-trip representation.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A dense exact or perturbation step counts as one appended gate.
fn gate_count(r: &FlowStepRecord<f64>) -> usize {
    r.appended_gates.len() + r.dense_unitaries
}

fn selection(r: &FlowStepRecord<f64>, mode: FlowMode) -> (String, String) {
    match (mode, r.selected()) {
        (FlowMode::Adaptive, Some((w, theta))) => (w.to_string(), num(theta)),
        _ => (String::new(), String::new()),
    }
}

fn kind(result: &RunResult) -> &'static str {
    match result.outcome {
        Outcome::Flow(_) => "flow",
        Outcome::Vqe(_) => "vqe",
    }
}

fn termination(result: &RunResult) -> String {
    match &result.outcome {
        Outcome::Flow(t) => t.termination.as_str().to_string(),
        Outcome::Vqe(t) if t.converged => "converged".to_string(),
        Outcome::Vqe(_) => "max_iters".to_string(),
    }
}

fn header(result: &RunResult) -> String {
    let mut s = format!("# {TOOL}\n# kind: {}\n# config: {}\n", kind(result), result.prepared.config.echo());
    if let Some(gt) = &result.ground {
        let _ = writeln!(s, "# ground_energy: {}", num(gt.ground_energy));
        let _ = writeln!(s, "# ground_degeneracy: {}", gt.degeneracy);
    }
    let _ = writeln!(s, "# termination: {}", termination(result));
    s
}

pub fn render_csv(result: &RunResult) -> String {
    let mut s = header(result);
    match &result.outcome {
        Outcome::Flow(t) => {
            s.push_str(FLOW_COLUMNS);
            s.push('\n');
            for r in &t.records {
                let (word, theta) = selection(r, t.config.mode);
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.step,
                    num(r.energy),
                    opt(r.residual),
                    num(r.gradient_norm),
                    gate_count(r),
                    word,
                    theta,
                    r.perturbations_used
                );
            }
        }
        Outcome::Vqe(t) => {
            s.push_str(VQE_COLUMNS);
            s.push('\n');
            for r in &t.records {
                let params: Vec<String> = r.params.iter().map(|p| num(*p)).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.iteration,
                    num(r.energy),
                    opt(r.residual),
                    num(r.gradient_norm),
                    params.join(";")
                );
            }
        }
    }
    s
}

/// `None` when the run carries no spectrum.
pub fn render_spectrum_csv(result: &RunResult) -> Option<String> {
    let Outcome::Flow(t) = &result.outcome else {
        return None;
    };
    if !t.records.iter().any(|r| r.spectrum.is_some()) {
        return None;
    }
    let mut s = header(result);
    s.push_str(SPECTRUM_COLUMNS);
    s.push('\n');
    for r in &t.records {
        for (w, c) in r.spectrum.iter().flatten() {
            let _ = writeln!(s, "{},{},{},{}", r.step, w.weight(), w, num(*c));
        }
    }
    Some(s)
}

pub fn render_json(result: &RunResult) -> String {
    let config: Value = serde_json::from_str(&result.prepared.config.echo()).expect("echo is JSON");
    let records: Vec<Value> = match &result.outcome {
        Outcome::Flow(t) => t
            .records
            .iter()
            .map(|r| {
                let selected = r.selected().filter(|_| t.config.mode == FlowMode::Adaptive);
                let mut v = json!({
                    "step": r.step,
                    "energy": r.energy,
                    "residual": r.residual,
                    "grad_norm": r.gradient_norm,
                    "n_appended_gates": gate_count(r),
                    "selected_word": selected.map(|s| s.0.to_string()),
                    "theta": selected.map(|s| s.1),
                    "perturbations": r.perturbations_used,
                });
                if let Some(spec) = &r.spectrum {
                    v["spectrum"] = spec
                        .iter()
                        .map(|(w, c)| json!({"word": w.to_string(), "weight": w.weight(), "coefficient": c}))
                        .collect();
                }
                v
            })
            .collect(),
        Outcome::Vqe(t) => t
            .records
            .iter()
            .map(|r| {
                json!({
                    "step": r.iteration,
                    "energy": r.energy,
                    "residual": r.residual,
                    "grad_norm": r.gradient_norm,
                    "params": r.params,
                })
            })
            .collect(),
    };
    let doc = json!({
        "tool": TOOL,
        "kind": kind(result),
        "config": config,
        "ground_energy": result.ground.as_ref().map(|g| g.ground_energy),
        "termination": termination(result),
        "records": records,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("trace serializes");
    text.push('\n');
    text
}

/// `trace.csv` → `trace.spectrum.csv`
pub fn spectrum_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.spectrum.csv"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(&parent.display().to_string(), e))?;
        }
    }
    fs::write(path, contents).map_err(|e| CliError::io(&path.display().to_string(), e))
}

/// Writes the trace (and spectrum, if any) under `out_dir`.
pub fn write(result: &RunResult, out_dir: &Path) -> Result<RunSummary, CliError> {
    let output = &result.prepared.config.output;
    let path = resolve_output(out_dir, &output.path);
    match output.format {
        OutputFormat::Csv => {
            write_file(&path, &render_csv(result))?;
            if let Some(spectrum) = render_spectrum_csv(result) {
                write_file(&spectrum_path(&path), &spectrum)?;
            }
        }
        OutputFormat::Json => write_file(&path, &render_json(result))?,
    }
    let (rows, final_energy, final_residual) = match &result.outcome {
        Outcome::Flow(t) => (t.records.len(), t.final_energy(), t.records.last().and_then(|r| r.residual)),
        Outcome::Vqe(t) => (t.records.len(), t.final_energy(), t.final_residual()),
    };
    Ok(RunSummary {
        path,
        kind: kind(result),
        rows,
        final_energy,
        final_residual,
        termination: termination(result),
    })
}
