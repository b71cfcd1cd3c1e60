//! Expression language and command-line front end.
//!
//! Every command writes to an `impl Write` and returns a [`Status`], so the
//! binary is a thin wrapper and the commands can be driven in-process.

pub mod commands;
pub mod dsl;
mod error;
pub mod suite;

pub use commands::{run, Cli, Command};
pub use error::{CliError, Status};
