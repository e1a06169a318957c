//! Finite-dimensional model of a metastable state.
//!
//! A discrete level coupled uniformly to an equidistant ladder of n-1 levels
//! (a symmetric arrowhead Hamiltonian) reproduces the characteristic physics
//! of a metastable state: a Lorentzian line shape, an enhanced density of
//! states near the resonance, and near-exponential decay with finite-size
//! corrections. The crate provides
//!
//! - [`model`]: parameters, derived scales, the unperturbed spectrum and the
//!   dense Hamiltonian;
//! - [`exact`]: machine-precision eigenvalues and first-component weights via
//!   the secular equation;
//! - [`dense`]: a cyclic-Jacobi eigensolver used to cross-validate the
//!   secular path on small systems;
//! - [`approx`]: the closed-form approximate spectrum, weights, line shape
//!   and density of states;
//! - [`dynamics`]: survival amplitude, decay curves, revivals and the exact
//!   recurrence-time construction;
//! - [`sweep`]: maximum-deviation error metrics, sweeps over the
//!   width-to-spacing ratio, and turning-point location.

// index loops mirror the matrix algebra
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_is_multiple_of)]

pub mod approx;
pub mod dense;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod kahan;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};
pub use model::{DerivedScales, ModelParams};
