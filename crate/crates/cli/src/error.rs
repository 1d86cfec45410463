use std::fmt;

/// Failures surfaced by the command layer, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Parameters rejected; carries the JSON document to print anyway.
    Validation { message: String, document: Option<String> },
    /// Quadrature gave up; carries the partial JSON document if any.
    Convergence { what: String, document: Option<String> },
    Parse { path: String, line: Option<usize>, message: String },
    Io { path: String, source: std::io::Error },
    Core(tlhardy_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use tlhardy_core::Error as E;
        match self {
            CliError::Validation { .. } => 2,
            CliError::Convergence { .. } => 3,
            CliError::Core(E::Precondition { .. } | E::Domain { .. }) => 2,
            CliError::Core(E::Convergence { .. } | E::Evaluation { .. }) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Validation { message, .. } => write!(f, "invalid parameters: {message}"),
            CliError::Convergence { what, .. } => write!(f, "did not converge: {what}"),
            CliError::Parse { path, line: Some(line), message } => write!(f, "{path}:{line}: {message}"),
            CliError::Parse { path, line: None, message } => write!(f, "{path}: {message}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Core(e) => Some(e),
            _ => None,
        }
    }
}

impl From<tlhardy_core::Error> for CliError {
    fn from(e: tlhardy_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("cannot encode output: {e}"))
    }
}
