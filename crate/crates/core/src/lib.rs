//! Exact computations with modular Lie algebras of Witt type over prime
//! fields: Zassenhaus algebras `W1(n)`, current algebras `L ⊗ A`, their
//! deformations `L(A, D)`, and the Chevalley–Eilenberg and Hochschild
//! cohomology that classifies them.

pub mod arith;
pub mod ceco;
pub mod cli;
pub mod cocycles;
pub mod commalg;
pub mod error;
pub mod hochschild;
pub mod liealg;
pub mod linalg;

pub use error::{Error, Result};
