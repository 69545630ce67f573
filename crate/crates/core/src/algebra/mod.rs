//! Exact arithmetic in `F_{p^k}` and linear algebra over it.

mod field;
mod matrix;
mod subspace;

use thiserror::Error;

pub use field::{is_irreducible, is_prime, Field, FieldElem, Gf, MAX_ORDER};
pub use matrix::{Matrix, Rref};
pub use subspace::{decompose, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1 and match the modulus")]
    BadDegree,
    #[error("field F_{p}^{k} exceeds the supported order")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("no irreducible polynomial of degree {k} over F_{p}")]
    NoIrreducible { p: u32, k: u32 },
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("element index {0} outside the field")]
    ElementOutOfRange(u32),
    #[error("coefficients do not describe a field element")]
    BadCoefficients,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces are not in direct sum")]
    NotDirectSum,
    #[error("vector lies outside the span of the subspaces")]
    OutsideSpan,
}
