//! Dense complex linear algebra used by every other module.

mod decomp;
mod matrix;
mod sum;

pub use decomp::{
    cholesky_hermitian, hermitian_eigen, hermitian_eigenvalues, invert, range_basis,
    solve_nullspace, svd, HermitianEigen, HermitianSpectrum, Svd,
};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use sum::{exact_sum, exact_sum_complex, ExactSum};
