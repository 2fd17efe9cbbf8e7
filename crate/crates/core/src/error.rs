use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is singular or too ill-conditioned to invert")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: expected {expected:?}, got {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("quadrature resolution must be at least 1, got {0}")]
    InvalidResolution(usize),
    #[error("integrand evaluation failed at node {node}")]
    EvaluationFailure { node: usize },
    #[error("group element kind does not match the group")]
    KindMismatch,
    #[error("representations or rule belong to different groups")]
    GroupMismatch,
    #[error("spin 2j = {0} is out of range (0..=12)")]
    SpinOutOfRange(u32),
    #[error("representation is already irreducible")]
    AlreadyIrreducible,
    #[error("representation is not irreducible (commutant dimension {0})")]
    NotIrreducible(usize),
    #[error("representation is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("characters were sampled on different rules")]
    RuleMismatch,
    #[error("multiplicity {0:.6} is not close to an integer")]
    NonIntegerMultiplicity(f64),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
