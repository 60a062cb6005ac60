use pdm_core::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, config or parameters (exit 2).
    Usage(String),
    /// The computation ran and failed (exit 1).
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parameter(_)
            | Error::Config(_)
            | Error::ComplexModel
            | Error::ComplexMap
            | Error::WrongClass
            | Error::InvalidGrid(_)
            | Error::GridTooCoarse { .. }
            | Error::Index { .. } => CliError::Usage(msg),
            Error::Domain { .. }
            | Error::SingularPoint { .. }
            | Error::SingularOnGrid { .. }
            | Error::QuadratureFailure { .. }
            | Error::ConvergenceFailure { .. }
            | Error::BudgetExceeded { .. }
            | Error::MatchFailure { .. } => CliError::Compute(msg),
        }
    }
}
