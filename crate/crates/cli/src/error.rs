use pg_models::ModelError;

/// CLI failure with its exit code: 2 for usage and schema problems, 3
/// for numerical failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Schema(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Schema(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Dimension(_)
            | ModelError::InvalidData(_)
            | ModelError::InvalidConfig(_) => CliError::Schema(e.to_string()),
            ModelError::NonPositiveDefinite(_)
            | ModelError::HessianNotPd
            | ModelError::NonConvergence { .. }
            | ModelError::KernelIllConditioned
            | ModelError::InsufficientDof { .. }
            | ModelError::Pg(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}
