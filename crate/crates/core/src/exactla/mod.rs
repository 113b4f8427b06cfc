//! Exact linear algebra over `Q` and `F_p`.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{FieldSpec, Scalar};
pub use matrix::{Matrix, Vector};
pub use subspace::Subspace;
