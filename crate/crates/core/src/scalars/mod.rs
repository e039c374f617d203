//! Exact scalars: cyclotomic numbers, polynomials and rational functions in
//! the symbolic parameters, and integer lattice points.

pub mod cyclotomic;
pub mod lattice;
pub mod poly;
pub mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use lattice::{lattice_box, multi_indices, multi_indices_of_degree, LatticePoint};
pub use poly::{Monomial, Poly, Var, MAX_RANK};
pub use scalar::{inner_product, inner_product_scalars, Scalar, Specialization};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conflicting specialization for {0}")]
    ConflictingSpecialization(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
