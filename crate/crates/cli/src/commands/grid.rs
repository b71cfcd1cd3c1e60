use std::io::Write;

use clap::{Args, ValueEnum};
use serde::Serialize;

use ggc_core::bracket::qcpb;
use ggc_core::{CoefFn, ComplexRational, Params};
use ggc_oracle::{compare, matrix_bracket, BracketKind, GridSpec, Scheme};

use super::bracket::Kind;
use super::{emit_json, quantum_inputs, write_rows};
use crate::dsl::lower_quantum;
use crate::error::{CliError, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Spectral,
    Central2,
}

#[derive(Debug, Clone, Args)]
pub struct GridCheckArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, value_enum, default_value_t = Kind::Qcpb)]
    pub kind: Kind,
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SchemeArg::Spectral)]
    pub scheme: SchemeArg,
    /// Compare away from the ends of the interval.
    #[arg(long)]
    pub windowed: bool,
    /// Defaults to 1e-8 for periodic spectral runs and 1e-2 otherwise. The
    /// band-limited spectral residual is only gated under the spectral scheme.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Test function; defaults to `1 + sin(x)/2 + i cos(3x)/3`.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,
}

/// `1 + ½ sin x + (i/3) cos 3x`.
pub fn default_state() -> CoefFn {
    let c = |a, b| ComplexRational::from_parts(a, b);
    let half_sin = CoefFn::sin(1, 0, 1)
        .expect("dimension one")
        .scale(&c((1, 2), (0, 1)));
    let third_cos = CoefFn::cos(1, 0, 3)
        .expect("dimension one")
        .scale(&c((0, 1), (1, 3)));
    &(&CoefFn::one(1) + &half_sin) + &third_cos
}

#[derive(Serialize)]
struct Report {
    symbolic: String,
    n: usize,
    scheme: &'static str,
    windowed: bool,
    rows: usize,
    modes: usize,
    action: f64,
    spectral: f64,
    tol: f64,
    pass: bool,
}

pub fn run(args: &GridCheckArgs, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let inputs = quantum_inputs(
        &args.s,
        &[("--a", &args.a), ("--b", &args.b)],
        Some(1),
        Params::default(),
    )?;
    let psi = match &args.psi {
        None => default_state(),
        Some(src) => lower_quantum(&super::parse_flag("--psi", src)?, &inputs.ctx)
            .map_err(|e| CliError::lower("--psi", e))?
            .as_multiplication()
            .ok_or_else(|| CliError::Domain("--psi must be a function".into()))?,
    };
    let scheme = match args.scheme {
        SchemeArg::Spectral => Scheme::Spectral,
        SchemeArg::Central2 => Scheme::Central2,
    };
    let grid = GridSpec::new(args.n, scheme)?.windowed(args.windowed);
    let tol = args
        .tol
        .unwrap_or(if grid.requires_periodic() { 1e-8 } else { 1e-2 });

    let (s, a, b) = (inputs.s(), &inputs.ops[0], &inputs.ops[1]);
    let report = qcpb(s, a, b)?;
    let (symbolic, kind) = match args.kind {
        Kind::Qpb => (report.qpb_part, BracketKind::Qpb),
        Kind::Geo => (report.geomutator_part, BracketKind::Geomutator),
        Kind::Qcpb => (report.total, BracketKind::Qcpb),
    };
    let numeric = matrix_bracket(s, a, b, &grid, kind)?;
    let r = compare(&symbolic, &numeric, &psi)?;
    let pass = match scheme {
        Scheme::Spectral => r.within(tol),
        Scheme::Central2 => r.action <= tol,
    };
    let report = Report {
        symbolic: symbolic.to_string(),
        n: args.n,
        scheme: match args.scheme {
            SchemeArg::Spectral => "spectral",
            SchemeArg::Central2 => "central2",
        },
        windowed: args.windowed,
        rows: r.rows,
        modes: r.modes,
        action: r.action,
        spectral: r.spectral,
        tol,
        pass,
    };
    let status = if pass { Status::Pass } else { Status::Fail };
    if json {
        emit_json(out, &report)?;
        return Ok(status);
    }
    write_rows(
        out,
        &[
            ("symbolic", report.symbolic),
            (
                "grid",
                format!(
                    "{} {}{}",
                    report.n,
                    report.scheme,
                    if report.windowed { ", windowed" } else { "" }
                ),
            ),
            ("rows", report.rows.to_string()),
            ("modes", report.modes.to_string()),
            ("action", format!("{:.3e}", report.action)),
            ("spectral", format!("{:.3e}", report.spectral)),
            ("tol", format!("{:.0e}", report.tol)),
            ("status", if pass { "PASS" } else { "FAIL" }.to_string()),
        ],
    )?;
    Ok(status)
}
