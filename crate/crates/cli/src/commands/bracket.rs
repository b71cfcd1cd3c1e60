use std::io::Write;

use clap::{Args, ValueEnum};
use serde::Serialize;

use ggc_core::bracket::qcpb;

use super::{emit_json, quantum_inputs, write_rows, ParamArgs};
use crate::error::{CliError, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Qpb,
    Geo,
    Qcpb,
}

#[derive(Debug, Clone, Args)]
pub struct BracketArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, value_enum, default_value_t = Kind::Qcpb)]
    pub kind: Kind,
    #[arg(long)]
    pub dim: Option<usize>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Serialize)]
struct Report {
    dim: usize,
    s: String,
    a: String,
    b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    qpb: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    geomutator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<String>,
}

pub fn run(args: &BracketArgs, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let inputs = quantum_inputs(
        &args.s,
        &[("--a", &args.a), ("--b", &args.b)],
        args.dim,
        args.params.params()?,
    )?;
    let (a, b) = (&inputs.ops[0], &inputs.ops[1]);
    let r = qcpb(inputs.s(), a, b)?;
    let show = |k: Kind, part: &ggc_core::DiffOp| {
        (args.kind == k || args.kind == Kind::Qcpb).then(|| part.to_string())
    };
    let report = Report {
        dim: inputs.ctx.dim,
        s: inputs.s().to_string(),
        a: a.to_string(),
        b: b.to_string(),
        qpb: show(Kind::Qpb, &r.qpb_part),
        geomutator: show(Kind::Geo, &r.geomutator_part),
        total: (args.kind == Kind::Qcpb).then(|| r.total.to_string()),
    };
    if json {
        emit_json(out, &report)?;
        return Ok(Status::Pass);
    }
    let mut rows = vec![("s", report.s), ("a", report.a), ("b", report.b)];
    rows.extend(report.qpb.map(|v| ("qpb", v)));
    rows.extend(report.geomutator.map(|v| ("geo", v)));
    rows.extend(report.total.map(|v| ("total", v)));
    write_rows(out, &rows)?;
    Ok(Status::Pass)
}
