use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix data has {found} entries, expected {expected}")]
    DataLength { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a column vector, found {cols} columns")]
    NotAColumn { cols: usize },
    #[error("tolerance `{name}` must lie in (0, 1), got {value}")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (||P - P^+||_F = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not idempotent (||P^2 - P||_F = {deviation:e})")]
    NotIdempotent { deviation: f64 },
    #[error("basis columns are not orthonormal (||B^+B - I||_F = {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("state vector is not normalized (norm = {norm})")]
    NotUnit { norm: f64 },
    #[error("the zero vector is not an admissible state")]
    ZeroVector,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("projector rank {rank} is trivial in dimension {dim}; need 1 <= rank <= dim - 1")]
    TrivialRank { dim: usize, rank: usize },
    #[error("2j must be a positive integer, got {twice_j}")]
    InvalidSpin { twice_j: u32 },
    #[error("{value} is not an eigenvalue of the matrix")]
    NotAnEigenvalue { value: f64 },
    #[error("atom `{label}` lives in dimension {found}, formula uses {expected}")]
    MixedAtomDimensions {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("no gap witness found after {attempts} attempts; check the tolerances")]
    WitnessBudgetExhausted { attempts: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
