//! Exact computer algebra for the shuffle basis of quasisymmetric functions,
//! characters of combinatorial Hopf algebras, theta maps, and peak algebras of
//! shuffle, tensor and symmetric algebras.
//!
//! All scalars are exact rationals ([`Rational`]). Elements of every algebra are
//! sparse [`Expansion`]s over a basis index (compositions, words, multisets of
//! letters, permutations).

pub mod algebra;
pub mod characters;
pub mod composition;
pub mod element;
pub mod expr;
pub mod freealg;
pub mod qsym;
pub mod sym;
pub mod theta;
pub mod verify;

pub use algebra::{Expansion, GradedHopf, Rational, Tagged, TensorExpansion};
pub use composition::Composition;
