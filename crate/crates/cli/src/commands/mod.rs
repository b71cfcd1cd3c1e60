mod bracket;
mod classical;
mod grid;
mod oscillator;
mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use ggc_core::bracket::check_real;
use ggc_core::{CoefFn, DiffOp, Params};

use crate::dsl::{lower_quantum, parse, Context, Expr};
use crate::error::{CliError, Status};

pub use bracket::{BracketArgs, Kind};
pub use classical::ClassicalArgs;
pub use grid::{GridCheckArgs, SchemeArg};
pub use oscillator::{LawArg, OscillatorArgs};
pub use verify::VerifyArgs;

#[derive(Debug, Parser)]
#[command(
    name = "ggc",
    version,
    about = "Generalized geometric commutators, exactly and on a grid"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Covariant bracket of two operators.
    Bracket(BracketArgs),
    /// Randomized identity suite.
    Verify(VerifyArgs),
    /// Oscillator dynamics, symbolic and on a grid.
    Oscillator(OscillatorArgs),
    /// Symbolic bracket against the matrix bracket on a grid.
    GridCheck(GridCheckArgs),
    /// Structural Poisson bracket and Hamilton systems on phase space.
    Classical(ClassicalArgs),
}

/// Physical constants, exact rationals such as `1/2`.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub hbar: BigRational,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub m: BigRational,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub omega: BigRational,
}

impl ParamArgs {
    pub fn params(&self) -> Result<Params, CliError> {
        Ok(Params::new(
            self.hbar.clone(),
            self.m.clone(),
            self.omega.clone(),
        )?)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match &cli.command {
        Command::Bracket(a) => bracket::run(a, cli.json, out),
        Command::Verify(a) => verify::run(a, cli.json, out),
        Command::Oscillator(a) => oscillator::run(a, cli.json, out),
        Command::GridCheck(a) => grid::run(a, cli.json, out),
        Command::Classical(a) => classical::run(a, cli.json, out),
    }
}

pub(crate) fn parse_flag(flag: &str, src: &str) -> Result<Expr, CliError> {
    parse(src).map_err(|error| CliError::Parse {
        flag: flag.into(),
        error,
    })
}

/// Dimension needed by a set of expressions, checked against `--dim`.
pub(crate) fn infer_dim(exprs: &[&Expr], requested: Option<usize>) -> Result<usize, CliError> {
    let needed = exprs
        .iter()
        .map(|e| e.max_index())
        .max()
        .unwrap_or(0)
        .max(1);
    match requested {
        Some(0) => Err(CliError::Domain("--dim must be at least 1".into())),
        Some(d) if d < needed => Err(CliError::Domain(format!(
            "--dim {d} is smaller than the highest index used ({needed})"
        ))),
        Some(d) => Ok(d),
        None => Ok(needed),
    }
}

/// Parsed `--s` together with the operators that may refer to it.
pub(crate) struct QuantumInputs {
    pub ctx: Context,
    pub ops: Vec<DiffOp>,
}

impl QuantumInputs {
    pub fn s(&self) -> &CoefFn {
        self.ctx.s.as_ref().expect("set after lowering")
    }
}

pub(crate) fn quantum_inputs(
    s_src: &str,
    others: &[(&str, &str)],
    dim: Option<usize>,
    params: Params,
) -> Result<QuantumInputs, CliError> {
    let s_expr = parse_flag("--s", s_src)?;
    let exprs: Vec<Expr> = others
        .iter()
        .map(|(flag, src)| parse_flag(flag, src))
        .collect::<Result<_, _>>()?;
    let mut all: Vec<&Expr> = exprs.iter().collect();
    all.push(&s_expr);
    let dim = infer_dim(&all, dim)?;

    let mut ctx = Context {
        dim,
        s: None,
        params,
    };
    let s = lower_quantum(&s_expr, &ctx)
        .map_err(|e| CliError::lower("--s", e))?
        .as_multiplication()
        .ok_or_else(|| {
            CliError::Domain("--s must be a function, not a differential operator".into())
        })?;
    check_real(&s)?;
    ctx.s = Some(s);
    let ops = exprs
        .iter()
        .zip(others)
        .map(|(e, (flag, _))| lower_quantum(e, &ctx).map_err(|err| CliError::lower(flag, err)))
        .collect::<Result<_, _>>()?;
    Ok(QuantumInputs { ctx, ops })
}

pub(crate) fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// `label = value` lines with the labels padded to a common width.
pub(crate) fn write_rows(out: &mut dyn Write, rows: &[(&str, String)]) -> Result<(), CliError> {
    let width = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    for (label, value) in rows {
        writeln!(out, "{label:<width$} = {value}")?;
    }
    Ok(())
}
