use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not positive definite (min eigenvalue {min:e}, max eigenvalue {max:e})")]
    NotPositiveDefinite { min: f64, max: f64 },

    #[error("matrix is singular or too ill-conditioned (singular value ratio {ratio:e})")]
    Singular { ratio: f64 },

    #[error("tangent vector is based at a different point")]
    BaseMismatch,

    #[error("unsupported Schatten norm p = {p} for {op}")]
    UnsupportedNorm { p: String, op: &'static str },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate basis: rank {rank} < {len}")]
    DegenerateBasis { rank: usize, len: usize },

    #[error("point is not in the submanifold (distance {distance:e})")]
    NotInSubmanifold { distance: f64 },

    #[error("subspace is not a Lie triple system (defect {defect:e})")]
    NotLieTriple { defect: f64 },

    #[error("objective returned a non-finite value")]
    NonFinite,

    #[error("empty point set")]
    EmptySet,

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("malformed matrix data: {0}")]
    Format(String),
}
