//! Free graded-commutative differential algebras.
//!
//! One machinery covers polynomial forms on ℝᵐ, Chevalley-Eilenberg algebras
//! of Lie superalgebras, and their extensions by odd coordinates. Elements
//! are homogeneous in cohomological degree; vector fields act through their
//! values on the degree-1 generators.

mod complex;
mod element;
mod generator;
mod model;
mod serial;
mod vector;

pub use complex::{cohomology, differential_matrix, CohomologyGroup, DegreeBasis};
pub use element::{FormElement, Monomial};
pub use generator::{Generator, Parity};
pub use model::{GeometricModel, ModelKind};
pub use serial::TermList;
pub use vector::VectorField;

#[cfg(test)]
mod tests;
