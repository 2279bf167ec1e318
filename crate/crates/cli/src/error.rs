use riemflow::Error as CoreError;

/// CLI failures, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: config, Hamiltonian text, arguments or size limits. Exit 1.
    #[error("{0}")]
    Validation(String),
    /// Failure while running or writing results. Exit 2.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    /// Classifies a core error and prefixes it with `context`.
    pub fn from_core(context: &str, e: CoreError) -> Self {
        let msg = format!("{context}: {e}");
        match e {
            CoreError::UnitarityDrift { .. }
            | CoreError::NotSkewHermitian { .. }
            | CoreError::DimensionMismatch { .. } => CliError::Runtime(msg),
            _ => CliError::Validation(msg),
        }
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Runtime(format!("{context}: {e}"))
    }
}
