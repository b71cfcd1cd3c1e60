//! Exact symbolic engine for the generalized geometric commutator
//! `[a, b] = ab − ba + G(s, a, b)` on linear differential operators, its
//! quantum dynamics, and the classical structural Poisson bracket.
//!
//! Coordinates are 0-based in the Rust API; the text form prints them 1-based
//! (`x1`, `d1`).

#![allow(clippy::needless_range_loop)]

pub mod bracket;
pub mod classical;
pub mod coeff;
pub mod diffop;
pub mod error;
pub mod quantum;
pub mod sample;
pub mod scalar;

pub use bracket::{BracketReport, JacobiResiduals, TransformVariant};
pub use classical::{DynamicsKind, PhaseFn, StructureMatrix};
pub use coeff::CoefFn;
pub use diffop::{DiffOp, MultiIndex};
pub use error::{Error, Result};
pub use quantum::{Hamiltonian, HamiltonianKind, Params};
pub use sample::Sampler;
pub use scalar::ComplexRational;
