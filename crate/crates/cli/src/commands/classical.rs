use std::fs;
use std::io::Write;

use clap::Args;
use num_rational::BigRational;
use serde::Serialize;

use ggc_core::classical::{dynamics_rhs, geobracket, gpb, gspb};
use ggc_core::{DynamicsKind, PhaseFn, StructureMatrix};

use super::{emit_json, infer_dim, parse_flag, write_rows};
use crate::dsl::lower_classical;
use crate::error::{CliError, Status};

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Also used as the Hamiltonian.
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// `canonical`, or a file with one matrix row of rationals per line.
    #[arg(long = "J", default_value = "canonical")]
    pub j: String,
    /// Number of position coordinates.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Serialize)]
struct Report {
    n: usize,
    canonical: bool,
    s: String,
    f: String,
    g: String,
    gpb: String,
    geobracket: String,
    gspb: String,
    gchs: String,
    tghs: String,
    sdyn: String,
}

/// Reads rows of whitespace-separated rationals; `#` starts a comment.
pub fn read_structure_matrix(text: &str) -> Result<StructureMatrix, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|w| {
                w.parse::<BigRational>().map_err(|_| {
                    CliError::Domain(format!("--J line {}: `{w}` is not a rational", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(StructureMatrix::new(rows)?)
}

pub fn run(args: &ClassicalArgs, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let (s_expr, f_expr, g_expr) = (
        parse_flag("--s", &args.s)?,
        parse_flag("--f", &args.f)?,
        parse_flag("--g", &args.g)?,
    );
    let file_matrix = match args.j.as_str() {
        "canonical" => None,
        path => Some(read_structure_matrix(&fs::read_to_string(path)?)?),
    };
    let requested = match (&file_matrix, args.dim) {
        (Some(j), Some(d)) if j.n() != d => {
            return Err(CliError::Domain(format!(
                "--J has size {} but --dim is {d}",
                2 * j.n()
            )));
        }
        (Some(j), _) => Some(j.n()),
        (None, d) => d,
    };
    let n = infer_dim(&[&s_expr, &f_expr, &g_expr], requested)?;
    let j = file_matrix.unwrap_or_else(|| StructureMatrix::canonical(n));

    let s = lower_classical(&s_expr, n, None).map_err(|e| CliError::lower("--s", e))?;
    if !s.is_real() {
        return Err(CliError::Domain(format!(
            "--s must be real-valued, got {s}"
        )));
    }
    let f = lower_classical(&f_expr, n, Some(&s)).map_err(|e| CliError::lower("--f", e))?;
    let g = lower_classical(&g_expr, n, Some(&s)).map_err(|e| CliError::lower("--g", e))?;
    let dynamics = |kind| -> Result<PhaseFn, CliError> { Ok(dynamics_rhs(&s, &g, &f, &j, kind)?) };

    let report = Report {
        n,
        canonical: j.is_canonical(),
        s: s.to_string(),
        f: f.to_string(),
        g: g.to_string(),
        gpb: gpb(&f, &g, &j)?.to_string(),
        geobracket: geobracket(&s, &f, &g, &j)?.to_string(),
        gspb: gspb(&s, &f, &g, &j)?.to_string(),
        gchs: dynamics(DynamicsKind::Gchs)?.to_string(),
        tghs: dynamics(DynamicsKind::Tghs)?.to_string(),
        sdyn: dynamics(DynamicsKind::Sdyn)?.to_string(),
    };
    if json {
        emit_json(out, &report)?;
        return Ok(Status::Pass);
    }
    write_rows(
        out,
        &[
            (
                "J",
                if report.canonical {
                    "canonical".to_string()
                } else {
                    args.j.clone()
                },
            ),
            ("s", report.s),
            ("f", report.f),
            ("g", report.g),
            ("{f,g}", report.gpb),
            ("geo", report.geobracket),
            ("{f,g}_s", report.gspb),
            ("GCHS df/dt", report.gchs),
            ("TGHS df/dt", report.tghs),
            ("S-dynamics", report.sdyn),
        ],
    )?;
    Ok(Status::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_matrix_files() {
        let j = read_structure_matrix("# J\n0 1\n-1 0\n").unwrap();
        assert!(j.is_canonical());
        assert!(read_structure_matrix("0 1\n1 0\n").is_err());
        assert!(read_structure_matrix("0 x\n-1 0\n").is_err());
        let j = read_structure_matrix("0 1/2 0 0\n-1/2 0 0 0\n0 0 0 1\n0 0 -1 0").unwrap();
        assert_eq!(j.n(), 2);
    }
}
