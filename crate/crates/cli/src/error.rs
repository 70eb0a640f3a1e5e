use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] relmono::Error),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl CliError {
    /// 2 input validation, 3 cross-input mismatch.
    pub fn exit_code(&self) -> u8 {
        use relmono::Error as E;
        match self {
            CliError::Core(E::SpecMismatch | E::ArfMismatch | E::QVectorMismatch(_)) => 3,
            _ => 2,
        }
    }
}
