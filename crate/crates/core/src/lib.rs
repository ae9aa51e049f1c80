//! Spectra of PT-symmetric Schrodinger operators on complexified contours.
//!
//! * [`contour`]: U-shaped and straight-line paths `x(s)` and wedge angles.
//! * [`model`]: Coulomb-Kratzer and Bender-Boettcher potentials, bare-mass
//!   sign, asymptotic classification and the stability verdict.
//! * [`analytic`]: closed-form Coulomb-Kratzer levels and the `-kappa` sweep.
//! * [`solver`]: finite-difference operators, dense QR and shift-invert
//!   eigenvalues, and bound-state matching.
//!
//! Units: `hbar = 1`, `|m| = 1/2`.

pub mod analytic;
pub mod contour;
pub mod error;
pub mod linalg;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
