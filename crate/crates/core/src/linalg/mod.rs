//! Exact scalar arithmetic and sparse linear algebra over Q and F_p.

mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use matrix::{axpy, dot, is_zero_vec, unit_vec, zero_vec, MatrixLiteral, Rref, SparseMatrix, SparseRow, Vector};
pub use poly::Poly;
pub use scalar::{is_prime, FieldSpec, Scalar, MAX_PRIME};
pub use subspace::Subspace;
