use thiserror::Error;

/// Errors produced by scene construction, signal synthesis, and processing.
#[derive(Debug, Error)]
pub enum SimError {
    /// Configuration could not be parsed or failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// A physical invariant was violated (Nyquist headroom, near-field
    /// breakdown, degenerate geometry).
    #[error("physics invariant violated: {0}")]
    Physics(String),

    /// An input signal or pattern did not satisfy an operation's
    /// precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;

impl SimError {
    /// Process exit code for the CLI: 2 for configuration problems,
    /// 3 for physics-invariant violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Config(_) => 2,
            SimError::Physics(_) => 3,
            _ => 1,
        }
    }
}
