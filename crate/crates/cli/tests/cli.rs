use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn riemflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riemflow")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn single_flow(h: &str, initial: &str) -> String {
    format!(
        r#"{{"hamiltonian": "{h}", "initial_circuit": {initial},
            "optimizer": {{"flow": {{"mode": "exact_dense", "step_size": 0.1, "max_steps": 20}}}},
            "output": {{"path": "out/trace.csv"}}}}"#
    )
}

#[test]
fn eigenstate_runs_terminate_at_step_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let ground = write_config(dir.path(), "ground.json", &single_flow("-Z0", "\"zero\""));
    let o = riemflow(&["run", &ground, "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("out/trace.csv")).unwrap();
    assert!(csv.contains("# termination: converged"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[0][2], "0.0");

    // |0> is the top eigenstate of Z0: zero gradient, large residual
    let top = write_config(dir.path(), "top.json", &single_flow("Z0", "\"zero\""));
    assert!(riemflow(&["run", &top, "--out", out]).status.success());
    let csv = fs::read_to_string(dir.path().join("out/trace.csv")).unwrap();
    assert!(csv.contains("# termination: stalled"));
    assert_eq!(data_rows(&csv).len(), 1);
}

#[test]
fn bad_hamiltonian_names_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.json", &single_flow("X9 +", "\"zero\""));
    let o = riemflow(&["run", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("'+'") && err.contains("line 1") && err.contains("position 4"), "{err}");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn config_errors_exit_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let typo = single_flow("X0", "\"zero\"").replace("max_steps", "max_step");
    let o = riemflow(&["run", &write_config(dir.path(), "typo.json", &typo), "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown field `max_step`") && String::from_utf8_lossy(&o.stderr).contains("line 2"));

    // the first config is fine, the second exceeds the dense limit: nothing runs
    let big = r#"[{"hamiltonian": "X0", "optimizer": {"flow": {"mode": "exact_dense", "step_size": 0.1, "max_steps": 2}},
                   "output": {"path": "first.csv"}},
                  {"hamiltonian": {"tfim": {"n": 10}}, "optimizer": {"flow": {"mode": "exact_dense", "step_size": 0.1, "max_steps": 2}},
                   "output": {"path": "second.csv"}}]"#;
    let o = riemflow(&["run", &write_config(dir.path(), "big.json", big), "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("config[1]") && err.contains("at most 8 qubits"), "{err}");
    assert!(!dir.path().join("first.csv").exists());

    assert_eq!(riemflow(&["run", "/nonexistent/config.json"]).status.code(), Some(1));
    assert_eq!(riemflow(&["preset", "fig6"]).status.code(), Some(1));
    assert_eq!(riemflow(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let cfg = single_flow("X0", "\"zero\"").replace("out/trace.csv", "blocker/trace.csv");
    let o = riemflow(&["run", &write_config(dir.path(), "c.json", &cfg), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn preset_equals_its_config_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for name in ["fig3", "fig5"] {
        let o = riemflow(&["preset", name, "--out", a.to_str().unwrap()]);
        assert!(o.status.success());
        let expanded = riemflow(&["preset", name, "--emit-config"]);
        let cfg = write_config(dir.path(), &format!("{name}.json"), &String::from_utf8(expanded.stdout).unwrap());
        assert!(riemflow(&["run", &cfg, "--out", b.to_str().unwrap()]).status.success());
    }
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for n in names {
        assert_eq!(fs::read(a.join(&n)).unwrap(), fs::read(b.join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn seeds_drive_the_stochastic_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, sub: &str| {
        let d = dir.path().join(sub);
        assert!(riemflow(&["preset", "fig4", "--seed", seed, "--out", d.to_str().unwrap()]).status.success());
        fs::read(d.join("fig4_riemannian.csv")).unwrap()
    };
    let first = run("7", "x");
    assert_eq!(first, run("7", "y"));
    assert_ne!(first, run("8", "z"));
}

#[test]
fn sampled_preset_records_shot_settings() {
    let dir = tempfile::tempdir().unwrap();
    let o = riemflow(&["preset", "fig5", "--shots", "2000", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("fig5_restricted.csv")).unwrap();
    assert!(csv.contains("\"shots\":2000") && csv.contains("parameter_shift"));
    let rows = data_rows(&csv);
    let last: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!(last < 0.1, "sampled residual {last}");
}

#[test]
fn json_output_and_gate_lists() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{
        "hamiltonian": "X0 + Y0 Z1",
        "initial_circuit": {"gates": [{"gate": "h", "wire": 0}, {"gate": "h", "wire": 1},
                                      {"gate": "pauli", "word": "Y0 Y1", "angle": 0.0}]},
        "optimizer": {"flow": {"mode": "adaptive", "step_size": 0.1, "max_steps": 30,
                               "subspace": {"two_local": {"nearest_neighbor": true, "include_singles": true}},
                               "step_strategy": "rotosolve"}},
        "seed": 4,
        "output": {"path": "adaptive.json", "format": "json", "emit_spectrum": true}
    }"#;
    let path = write_config(dir.path(), "c.json", cfg);
    let o = riemflow(&["run", &path, "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("adaptive.json")).unwrap()).unwrap();
    assert_eq!(doc["kind"], "flow");
    assert!(doc["config"].get("output").is_none());
    let records = doc["records"].as_array().unwrap();
    assert!(records[1]["selected_word"].is_string());
    assert_eq!(records[0]["spectrum"].as_array().unwrap().len(), 15);
    let e0 = doc["ground_energy"].as_f64().unwrap();
    assert!((e0 + 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn vqe_csv_has_parameter_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"hamiltonian": {"tfim": {"n": 4}}, "initial_circuit": "plus",
        "optimizer": {"vqe": {"ansatz": {"hva": {"layers": 2}}, "step_size": 0.01, "max_iters": 5}},
        "output": {"path": "v.csv"}}"#;
    let path = write_config(dir.path(), "v.json", cfg);
    assert!(riemflow(&["run", &path, "--out", dir.path().to_str().unwrap()]).status.success());
    let csv = fs::read_to_string(dir.path().join("v.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "step,energy,residual,grad_norm,params"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0][4].split(';').count(), 4);
}

#[test]
fn ground_command_prints_energy() {
    let o = riemflow(&["ground", "X0 + X1 + Y1"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("ground_energy: -2.414213562373") && text.contains("degeneracy: 1"), "{text}");
    let o = riemflow(&["ground", "tfim:4"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("ground_energy: -5.22625185950"));
    assert_eq!(riemflow(&["ground", "X0 X0"]).status.code(), Some(1));
}

#[test]
fn adaptive_trace_file_replays_to_its_energies() {
    use riemflow::pauli::parse_pauli_sum_with_qubits;
    use riemflow::{models, Gate64, PauliSum64, StateVector64};

    let dir = tempfile::tempdir().unwrap();
    assert!(riemflow(&["preset", "fig7", "--out", dir.path().to_str().unwrap()]).status.success());
    let csv = fs::read_to_string(dir.path().join("fig7_adaptive.csv")).unwrap();
    let h = models::tfim::<f64>(4, 1.0, true).unwrap();
    let mut state = StateVector64::plus(4).unwrap();
    for row in data_rows(&csv) {
        if !row[5].is_empty() {
            let word: PauliSum64 = parse_pauli_sum_with_qubits(&row[5], 4).unwrap();
            let theta: f64 = row[6].parse().unwrap();
            state.apply(&Gate64::PauliRotation(word.terms()[0].word, theta)).unwrap();
        }
        let recorded: f64 = row[1].parse().unwrap();
        assert!((state.expectation(&h).unwrap() - recorded).abs() < 1e-9, "step {}", row[0]);
    }
}
