use num_complex::Complex64;
use thiserror::Error;

/// Where an inversion broke down.
#[derive(Debug, Clone, PartialEq)]
pub enum Singularity {
    /// Elimination found no usable pivot in this column.
    Pivot { column: usize },
    /// Smallest singular value fell below `eps_rank * sigma_max`.
    SingularValue { sigma_min: f64, sigma_max: f64 },
}

impl std::fmt::Display for Singularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Singularity::Pivot { column } => write!(f, "zero pivot in column {column}"),
            Singularity::SingularValue {
                sigma_min,
                sigma_max,
            } => {
                write!(
                    f,
                    "sigma_min = {sigma_min:e} relative to sigma_max = {sigma_max:e}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular matrix ({0})")]
    SingularMatrix(Singularity),

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("function has a pole at {at}")]
    Pole { at: Complex64 },

    #[error("all jet coefficients of orders 1..={order} vanish")]
    DegreeExceedsOrder { order: usize },

    #[error("jet mismatch: {0}")]
    JetMismatch(String),

    #[error("contour violation: {0}")]
    ContourViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid group element: |alpha|^2 - |beta|^2 - 1 = {defect:e}")]
    InvalidGroupElement { defect: f64 },

    #[error("point {z} is not inside the unit disk")]
    NotInDisk { z: Complex64 },

    #[error("invalid jordan specification: {0}")]
    InvalidSpec(String),

    #[error("exact backend needs eigenvalues supplied explicitly")]
    EigenvaluesRequired,

    #[error("{0} is not available in the exact backend")]
    Unsupported(&'static str),

    #[error("eigenvalue images of {first} and {second} collide within {eps:e}")]
    ImageCollision {
        first: String,
        second: String,
        eps: f64,
    },

    #[error("inconsistent Jordan structure: block lengths sum to {found}, expected {expected}")]
    InconsistentStructure { found: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
