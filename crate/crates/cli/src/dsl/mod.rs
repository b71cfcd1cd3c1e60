//! Text form of operators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)*
//! atom   := scalar | 'x'INT | 'd'INT | 'p'INT | 'P'INT | 's' | 'H'
//!         | 'exp' '(' expr ')' | '(' expr ')'
//! scalar := INT ['/' INT] ['i'] | 'i'
//! ```
//!
//! Juxtaposition is not multiplication. The imaginary suffix must touch the
//! literal (`3/2i`); `3/2 i` is a syntax error.

mod ast;
mod lexer;
mod lower;
mod parser;

use std::fmt;

pub use ast::{Expr, ExprKind, Preset};
pub use lexer::Pos;
pub use lower::{lower_classical, lower_quantum, Context};
pub use parser::parse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn at(pos: Pos, expected: Vec<String>, found: String) -> Self {
        ParseError {
            pos,
            expected,
            found,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected ", self.pos)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            [init @ .., last] => write!(f, "{} or {last}", init.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerError {
    /// The expression does not make sense in the current context.
    Domain {
        pos: Pos,
        msg: String,
    },
    Core(ggc_core::Error),
}

impl fmt::Display for LowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerError::Domain { pos, msg } => write!(f, "{pos}: {msg}"),
            LowerError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LowerError {}

impl From<ggc_core::Error> for LowerError {
    fn from(e: ggc_core::Error) -> Self {
        LowerError::Core(e)
    }
}
