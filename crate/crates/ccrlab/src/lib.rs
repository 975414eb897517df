//! Numerical laboratory for Weyl systems on truncated symmetric Fock spaces.
//!
//! The crate builds tuples of one-parameter unitary groups that commute up to
//! phases prescribed by a real antisymmetric matrix, realizes them as Weyl
//! operators on a degree-truncated symmetric Fock space, and certifies the
//! identities that connect them: Gram conditions on the generating vectors,
//! commutation phases, the damped compression of a larger Weyl system onto a
//! smaller one, block-norm estimates for the off-corner pieces, and the
//! bound arithmetic that compares perturbation constants.
//!
//! Everything is desk scale: dense complex matrices, deterministic seeds,
//! explicit tolerances. The `ccrlab` binary drives the same checks from JSON
//! scenario configs and emits machine-readable reports.

pub mod antisym;
pub mod config;
pub mod dilation;
pub mod error;
pub mod fock;
pub mod gram;
pub mod perturb;
pub mod report;
pub mod suites;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Dense complex matrix alias.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dense complex vector alias.
pub type CVector = nalgebra::DVector<C64>;
