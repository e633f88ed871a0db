use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Compute(#[from] hubbard_swap::Error),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 2 for bad input, 3 for failed verification, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use hubbard_swap::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(E::InvalidArgument(_) | E::InsufficientData { .. }) => 2,
            CliError::Verification { .. } => 3,
            _ => 1,
        }
    }
}
