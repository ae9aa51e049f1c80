//! Small dense and banded complex linear algebra used by the solver.

mod hessenberg;
mod symmetric;
mod tridiagonal;

pub use hessenberg::hessenberg_eigenvalues;
pub use symmetric::symmetric_tridiagonal_eigenvalues;
pub use tridiagonal::{Tridiagonal, TridiagonalLu};
