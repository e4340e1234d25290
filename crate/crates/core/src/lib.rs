//! Bound-state spectra and radial wave functions of hydrogen-like atoms in
//! three-dimensional spaces of constant curvature.
//!
//! The solver reduces the radial equation to hypergeometric type with the
//! Nikiforov-Uvarov construction and keeps every polynomial step in exact
//! complex-rational arithmetic. Independent oracles live next to it: exact
//! Rodrigues differentiation, adaptive quadrature and a finite-difference
//! eigen-solver.
//!
//! Units are atomic with energies in Rydberg: `a_B = 1`, `Ry = 1`, so that
//! `2m/ħ² = 1` and `2me²/ħ² = 2`. Curvature is the dimensionless `κ a_B²`.
//!
//! # Modules
//!
//! - [`curvature`]: generalized trigonometric functions and the curved Coulomb potential
//! - [`exact`] / [`poly`]: complex-rational numbers, polynomials and the `P(z)(1+z²)^m e^{a·arctan z}` family
//! - [`nu`]: generic Nikiforov-Uvarov reduction, branch enumeration and Rodrigues polynomials
//! - [`atom`]: spectrum, polynomial recurrences and radial wave functions
//! - [`normalization`]: ladder operators, normalization recursion and quadrature normalization
//! - [`flat`]: associated Laguerre polynomials, Duff identity and the flat-space limit
//! - [`ode`]: finite-difference eigen-solver used as an independent oracle

#![no_std]

extern crate alloc;

// Modules import `num_traits::Float` for f64 math; the import goes unused
// whenever std is linked into the same build and its inherent methods win.

pub mod atom;
pub mod curvature;
mod error;
pub mod exact;
pub mod flat;
pub mod normalization;
pub mod nu;
pub mod ode;
pub mod poly;
pub mod quadrature;
pub mod tridiag;

pub use error::{Error, Result, SelectionFailure};
