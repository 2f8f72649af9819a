//! Exact scalar fields, sparse polynomials in the entries of a generic
//! `m x n` matrix, maximal minors, and exact rank/kernel linear algebra.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{PolyMatrix, ScalarMatrix};
pub use poly::{
    maximal_minor, monomials_of_degree, monomials_with_margins, Monomial, Polynomial, VarId,
};
pub use scalar::{FieldCfg, Scalar, DEFAULT_PRIME};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime > 2")]
    NotPrime(u64),
    #[error("column set has size {got}, expected {expected}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("index {index} out of range for {what} of size {size}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
}
