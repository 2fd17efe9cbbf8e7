//! Numerical thresholds shared by every module.
//!
//! Exact statements about groups and forms become residual bounds; the
//! constants below are the defaults used when a caller does not override them.

/// Reconstruction accuracy expected from dense kernels (Cholesky, inversion).
pub const KERNEL: f64 = 1e-12;

/// Structural checks: Hermiticity, Jacobi identity, commutation, invariance.
pub const STRUCTURAL: f64 = 1e-10;

/// Smallest eigenvalue (relative to the largest magnitude) accepted as positive.
pub const DEFINITENESS: f64 = 1e-10;

/// Relative singular-value cutoff for rank and dimension decisions.
pub const RANK: f64 = 1e-7;

/// Eigenvalue gap that separates clusters when splitting a commutant element.
pub const CLUSTER_GAP: f64 = 1e-6;

/// Distance from an integer tolerated when rounding a multiplicity.
pub const MULTIPLICITY_WINDOW: f64 = 0.05;

/// Unitarity drift of an SU(2) element that triggers re-projection.
pub const SU2_DRIFT: f64 = 1e-12;

/// Homomorphism residual accepted when loading a representation.
pub const HOMOMORPHISM: f64 = 1e-8;

/// Condition number (1-norm estimate) above which inversion reports `Singular`.
pub const MAX_CONDITION: f64 = 1e13;
