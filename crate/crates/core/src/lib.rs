//! Multi-variable Kostka–Shoji polynomials attached to pairs of
//! `r`-multipartitions, together with independent combinatorial routes that
//! cross-check them.

pub mod affine;
pub mod characters;
pub mod error;
pub mod kostka;
pub mod laurent;
pub mod multipartition;
pub mod poly;
pub mod pseudoroots;
pub mod verify;

pub use error::{Error, Result};
pub use kostka::{kostka, kostka_single, kostka_table, KostkaEngine, KostkaResult};
pub use laurent::GradedLaurent;
pub use multipartition::{AlphaVec, Multipartition};
pub use poly::TPoly;
pub use pseudoroots::{PartitionFunction, PseudorootSystem};
