//! Scalar backends and dense complex matrices.
//!
//! The exact backend ([`Exact`], Gaussian rationals) is the ground truth for
//! anything discrete: ranks, kernel dimensions, Jordan structure. The float
//! backend ([`Float`]) serves quadrature and dense eigenvalue work.

mod matrix;
mod scalar;

pub use matrix::{CMatrix, LeftModule};
pub use scalar::{format_rational, parse_rational, Exact, Float, Scalar};

/// Numerical thresholds for the float backend. The exact backend ignores them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Singular values below `rank * sigma_max` count as zero.
    pub rank: f64,
    /// Eigenvalue clustering radius.
    pub eig: f64,
    /// Normalized Taylor coefficients below this count as zero in degree detection.
    pub degree: f64,
    /// Allowed drift of `|alpha|^2 - |beta|^2` from 1.
    pub group: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            eig: 1e-7,
            degree: 1e-9,
            group: 1e-12,
        }
    }
}
