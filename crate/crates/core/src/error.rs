use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("metric parameters must be finite and strictly positive, got ({0}, {1}, {2})")]
    NonPositiveParameter(f64, f64, f64),

    #[error("generator oracle left an imaginary residue {residue:e} at entry ({row}, {col}) for k = {k}")]
    ImaginaryResidue {
        k: usize,
        row: usize,
        col: usize,
        residue: f64,
    },

    #[error("symmetrized Casimir matrix for k = {k} is not symmetric (residue {residue:e})")]
    AsymmetryResidue { k: usize, residue: f64 },

    #[error("matrix for k = {k} has a non-zero entry at ({row}, {col}) outside the |i-j| in {{0,2}} pattern")]
    PatternViolation { k: usize, row: usize, col: usize },

    #[error(
        "bisection did not converge for eigenvalue index {index} after {iterations} iterations"
    )]
    NonConvergence { index: usize, iterations: usize },

    #[error("representation cutoff {required} exceeds the configured cap {cap}")]
    CutoffTooLarge { required: usize, cap: usize },

    #[error("no spectrum entry within tolerance of {0}")]
    NotFound(f64),

    #[error(
        "certified interval [{lower}, {upper}] violates the bound ({bound_lower}, {bound_upper}]"
    )]
    BoundViolation {
        lower: f64,
        upper: f64,
        bound_lower: f64,
        bound_upper: f64,
    },

    #[error("a product metric needs at least one factor")]
    EmptyProduct,

    #[error("spectral invariants are inconsistent: {0}")]
    InconsistentInvariants(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
