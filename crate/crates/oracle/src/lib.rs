//! Numerical cross-check for the exact engine.
//!
//! One-dimensional operators become dense complex matrices on the periodic
//! grid `x_k = 2πk/N`. Brackets are recomputed with matrix products and
//! dynamics are integrated with classic RK4, all in double precision and
//! without touching the engine's exact arithmetic beyond sampling
//! coefficient functions.

mod compare;
mod error;
mod evolve;
mod grid;
mod ops;

pub use compare::{compare, Residual};
pub use error::{OracleError, Result};
pub use evolve::{
    conjugation_oracle, evolve, periodic_oscillator, write_csv, Evolution, EvolveConfig, Law,
    Sample, CSV_HEADER,
};
pub use grid::{GridSpec, Scheme};
pub use ops::{discretize, is_periodic, matrix_bracket, sample, BracketKind, GridOp};
