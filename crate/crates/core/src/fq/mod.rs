//! Finite fields, truncated power-series algebras and canonical subspaces.

pub mod algebra;
pub mod field;
pub mod subspace;

pub use algebra::{AlgElem, TruncatedAlgebra};
pub use field::{prime_power, Elem, Field};
pub use subspace::{enumerate_subspaces, for_each_subspace, gaussian_binomial, subspace_count, Subspace};
