//! Jet-indexed spectra and an intertwining functional calculus for finite
//! complex matrices.
//!
//! The spectrum of a matrix is the multiset of pairs `(lambda, k)`, one per
//! Jordan block. Functions act on matrices through a calculus that commutes
//! with the SU(1,1) action on the disk, computed both from jets on the Jordan
//! structure and by resolvent contour quadrature.

pub mod calculus;
pub mod error;
pub mod jets;
pub mod jordan;
pub mod moebius;
pub mod numerics;
pub mod specmap;

pub use calculus::{
    apply_function_contour, apply_function_contour_with_radius, apply_function_jet,
    intertwine_check, wavelet_transform, wavelet_transform_matrix,
};
pub use error::{Error, Result, Singularity};
pub use jets::{degree_of_zero, jet_compose, jet_mul, jet_of, rho1_prolonged, HoloFunction, Jet};
pub use jordan::{
    build_matrix, find_eigenvalues, spectrum, spectrum_of_spec, weyr_sequence, JordanBlock,
    JordanSpec, Spectrum, SpectrumPoint,
};
pub use moebius::{
    coherent_state, mobius_algebra, mobius_disk, resolvent, rho_a_apply, DiskPoint, GroupElement,
    KDDecomposition,
};
pub use numerics::{CMatrix, Exact, Float, LeftModule, Scalar, Tolerances};
pub use specmap::{
    map_point_literal, map_point_split, map_spectrum, verify_mapping, MapMode, MappingReport,
};
