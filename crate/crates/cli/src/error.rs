use std::fmt;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A verifier found a counterexample.
    Counterexample(String),
    /// Bad flags, unreadable files or invalid domains.
    Usage(String),
    /// Solver or mesher failure on valid input.
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Counterexample(_) => 1,
            Self::Usage(_) => 2,
            Self::Numerical(_) => 3,
        }
    }

    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::Usage(msg.to_string())
    }

    pub fn numerical(msg: impl fmt::Display) -> Self {
        Self::Numerical(msg.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Counterexample(m) => write!(f, "counterexample: {m}"),
            Self::Usage(m) => write!(f, "error: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
