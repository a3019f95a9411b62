//! Exact rational scalars and sparse linear algebra.

mod linalg;
mod rational;
mod sparse;

pub use linalg::{kernel, quotient_basis, rank, rank_of, rref, solve, Echelon, SpanBasis};
pub use rational::Rational;
pub use sparse::{SparseMatrix, SparseVec};
