use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("non-finite entry in matrix")]
    NonFinite,
    #[error("matrix is not accretive (Hermitian part not positive definite, lambda_min = {0:.3e})")]
    NotAccretive(f64),
    #[error("matrix is not positive definite (lambda_min = {0:.3e})")]
    NotPositiveDefinite(f64),
    #[error("ill-conditioned eigenbasis (kappa = {0:.3e} exceeds cap {1:.3e})")]
    IllConditioned(f64, f64),
    #[error("eigensolver failed to converge")]
    ConvergenceFailure,
    #[error("matrix is numerically singular")]
    Singular,
    #[error("eigenvalue on the principal-branch cut (z = {0})")]
    BranchCut(num_complex::Complex64),
    #[error("resample budget exhausted after {0} attempts")]
    ResampleBudget(usize),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("registration check failed for `{0}`: {1}")]
    Registration(String, String),
    #[error("witness is missing field `{0}`")]
    MissingWitnessField(String),
    #[error("report schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
