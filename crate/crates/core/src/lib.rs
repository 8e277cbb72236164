//! Exact partial Galois cohomology over finite commutative rings.
//!
//! Rings are products of `Z/p^k`, groups are Cayley tables, and every
//! cohomological computation reduces to Smith normal forms over `Z`.

pub mod abelian;
pub mod cli;
pub mod algebra;
pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod finring;
pub mod fixtures;
pub mod galois;
pub mod gencross;
pub mod group;
pub mod input;
pub mod paction;
pub mod pics;
pub mod sequence;

pub use error::{Error, Result};
