//! Exact linear algebra over ℚ and 𝔽_p.

mod echelon;
mod matrix;
mod subspace;
mod system;

pub use echelon::{determinant, rref, rref_rows, Echelon};
pub use matrix::Matrix;
pub use subspace::{
    cokernel, image, inverse, is_invertible, is_positive_definite, kernel,
    leading_principal_minors, rank, solve, solve_homogeneous, solve_matrix, Subquotient, Subspace,
};
pub use system::{BlockSystem, Term};
