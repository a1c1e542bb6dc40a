//! Classification, K-theory and truncated operator models of Toeplitz
//! quantum surfaces described by boundary words.
//!
//! * [`word`] parses boundary words, finds the vertex identifications and
//!   classifies the surface together with its quantum invariant `(N, k)`.
//! * [`curves`] builds the Hawaiian-earring boundary symbol and computes
//!   winding numbers.
//! * [`operators`] truncates the shift-operator generators, their spectra and
//!   the Bott projection.
//! * [`ktheory`] computes the index map and the K-groups with generators.
//! * [`verify`] runs the invariant checks used by the `verify` command.

pub mod cli;
pub mod curves;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod operators;
pub mod smith;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
