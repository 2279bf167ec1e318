use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use riemflow_cli::{ground_report, preset_configs, run_config_file, run_preset, CliError, RunSummary};

/// Riemannian gradient flow experiments on small qubit registers.
#[derive(Parser)]
#[command(name = "riemflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in experiment: fig3, fig4, fig5 or fig7.
    Preset {
        name: String,
        /// Directory for trace files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample coefficients with this many shots (Trotterized and adaptive flows).
        #[arg(long, default_value_t = 0)]
        shots: u64,
        /// Print the expanded run configs as JSON instead of running.
        #[arg(long)]
        emit_config: bool,
    },
    /// Run the config (or array of configs) in a JSON file.
    Run {
        config: PathBuf,
        /// Directory that relative output paths resolve against.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the exact ground energy and degeneracy of a Hamiltonian.
    Ground {
        /// Pauli text ("X0 + 0.5 Z0 Z1"), a model object ('{"tfim":{"n":4}}') or tfim:N[:g].
        hamiltonian: String,
        #[arg(long)]
        n_qubits: Option<usize>,
    },
}

fn report(summaries: Vec<RunSummary>) {
    for s in summaries {
        println!("{s}");
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Preset {
            name,
            out,
            seed,
            shots,
            emit_config,
        } => {
            if emit_config {
                let configs = preset_configs(&name, seed, shots)?;
                println!("{}", serde_json::to_string_pretty(&configs).expect("configs serialize"));
            } else {
                report(run_preset(&name, seed, shots, &out)?);
            }
        }
        Command::Run { config, out } => report(run_config_file(&config, &out)?),
        Command::Ground { hamiltonian, n_qubits } => print!("{}", ground_report(&hamiltonian, n_qubits)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
