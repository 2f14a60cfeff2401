//! Exact arithmetic: arbitrary-precision integer matrices, Smith normal
//! form, symbolic reals, and `SL₂(Z)` / `Sp(2g, Z)` utilities.

mod matrix;
mod smith;
mod sl2z;
mod symbolic;
pub mod symplectic;

use num_bigint::BigInt;
use thiserror::Error;

pub use matrix::IntMatrix;
pub use sl2z::{
    factor_positive, positive_conjugate, sl2z_canonical_form, CyclicWord, Mat2, RlLetter,
    Sl2zCanonicalForm,
};
pub use smith::{
    cokernel_structure, kernel_rank, rank, smith_normal_form, solve_integer,
    AbelianGroupStructure, Cokernel, IntegerSolution, SmithDecomposition,
};
pub use symbolic::{
    integer_combination, rational_rank, Monomial, Rational, SpanRing, SymbolicReal, SymbolicSign,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, expected 2x2")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("determinant is {determinant}, expected 1")]
    NotUnimodular { determinant: BigInt },
    #[error("{0}")]
    Parse(String),
}
