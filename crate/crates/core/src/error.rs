use thiserror::Error;

/// Errors raised by the numerical and model layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H[i][j] - conj(H[j][i])| = {deviation:e} at ({row}, {col})")]
    NotHermitian { deviation: f64, row: usize, col: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator does not commute with the Hamiltonian: max |[H, R]| = {residual:e}")]
    NotCommuting { residual: f64 },

    #[error("operator is not an involution: max |R^2 - I| = {residual:e}")]
    NotInvolution { residual: f64 },

    #[error("eigenvector {index} has no definite parity: <v|R|v> = {expectation}")]
    UnresolvedParity { index: usize, expectation: f64 },

    #[error("malformed angular momentum: j = {twice_j}/2, m = {twice_m}/2")]
    InvalidQuantumNumber { twice_j: i32, twice_m: i32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("too few data points: need at least {needed}, have {found}")]
    InsufficientData { needed: usize, found: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
