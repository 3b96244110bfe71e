//! Jets (truncated Taylor data), closed-form holomorphic functions, and the
//! prolongation of `rho_1` to jets.

mod holo;
mod jet;
pub mod poly;

pub use holo::{degree_of_zero, jet_of, rho1_prolonged, HoloFunction};
pub use jet::{jet_compose, jet_mul, Jet};
