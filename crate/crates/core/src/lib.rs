//! Numerical representation theory of compact groups.
//!
//! The crate realizes the invariant integral on finite groups, the circle and
//! SU(2) as quadrature rules, and builds on it the classical constructions:
//! trace forms of Lie algebras, unitarization by group averaging, commutants
//! and Schur-type irreducibility tests, block decomposition of reducible
//! representations and the orthogonality relations for characters and
//! matrix coefficients.

pub mod error;
pub mod group;
pub mod haar;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod probes;
pub mod rep;
pub mod schur;
pub mod tolerance;
pub mod unitarize;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use haar::HaarRule;
pub use rep::{Character, Representation};
pub use linalg::{ComplexMatrix, RealMatrix};

