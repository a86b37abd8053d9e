//! Finite category theory engine: finite categories, set-valued functors,
//! comprehensive factorizations, profunctors, atoms and finite coverings.

pub mod calculus;
pub mod catalog;
pub mod cauchy;
pub mod comma;
pub mod error;
pub mod factorization;
pub mod fincat;
pub mod gen;
pub mod laws;
pub mod poset;
pub mod profunctor;
pub mod sets;
pub mod topo;

pub use error::{Error, Result};
