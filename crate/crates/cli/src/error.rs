use std::io;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] lurkit::Error),

    #[error("invalid density file {path}: {reason}")]
    DensityFile { path: String, reason: String },

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for usage and input errors, 3 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}
