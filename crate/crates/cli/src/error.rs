use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("ParseError: {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Core(#[from] qbc_core::Error),
    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad input, 3 for failures while computing or writing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Core(qbc_core::Error::Numeric(_)) => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
