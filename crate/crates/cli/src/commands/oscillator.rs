use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use ggc_core::quantum::{classical_momentum, covariant_rhs, gdynamics, gen_heisenberg_rhs};
use ggc_core::{CoefFn, DiffOp, Hamiltonian};
use ggc_oracle::{
    evolve, is_periodic, periodic_oscillator, write_csv, EvolveConfig, GridSpec, Law, Scheme,
};

use super::grid::default_state;
use super::{emit_json, quantum_inputs, write_rows, ParamArgs};
use crate::error::{CliError, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Covariant,
    Heisenberg,
}

impl From<LawArg> for Law {
    fn from(l: LawArg) -> Law {
        match l {
            LawArg::Covariant => Law::Covariant,
            LawArg::Heisenberg => Law::GeneralizedHeisenberg,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OscillatorArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Grid size for the numerical evolution.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Record every n-th step.
    #[arg(long, default_value_t = 100)]
    pub stride: usize,
    #[arg(long, value_enum, default_value_t = LawArg::Covariant)]
    pub law: LawArg,
    /// Write samples here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Run the evolution even when `s` is not periodic.
    #[arg(long)]
    pub windowed: bool,
}

#[derive(Serialize)]
struct Symbolic {
    hamiltonian: String,
    s: String,
    w: String,
    geomenergy: String,
    covariant_x: String,
    heisenberg_x: String,
    covariant_p: String,
    heisenberg_p: String,
    heisenberg_h: String,
    energy_law_holds: bool,
}

#[derive(Serialize)]
struct SampleRow {
    t: f64,
    re_expect: f64,
    im_expect: f64,
    residual: f64,
    rhs_norm: f64,
}

#[derive(Serialize)]
struct Numeric {
    hamiltonian: String,
    observable: String,
    grid: usize,
    law: &'static str,
    t_final: f64,
    steps: usize,
    samples: Vec<SampleRow>,
    max_residual: f64,
}

#[derive(Serialize)]
struct Report {
    symbolic: Symbolic,
    #[serde(skip_serializing_if = "Option::is_none")]
    evolution: Option<Numeric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn symbolic(s: &CoefFn, h: &Hamiltonian) -> Result<Symbolic, CliError> {
    let x = DiffOp::position(1, 0)?;
    let p = classical_momentum(1, 0, &h.params)?;
    let g = gdynamics(s, h)?;
    let dh = gen_heisenberg_rhs(s, h, &h.op)?;
    let energy_law_holds = dh == -&(&h.op * &g.w_op);
    Ok(Symbolic {
        hamiltonian: h.op.to_string(),
        s: s.to_string(),
        w: g.w_op.to_string(),
        geomenergy: g.geomenergy.to_string(),
        covariant_x: covariant_rhs(s, h, &x)?.to_string(),
        heisenberg_x: gen_heisenberg_rhs(s, h, &x)?.to_string(),
        covariant_p: covariant_rhs(s, h, &p)?.to_string(),
        heisenberg_p: gen_heisenberg_rhs(s, h, &p)?.to_string(),
        heisenberg_h: dh.to_string(),
        energy_law_holds,
    })
}

pub fn run(args: &OscillatorArgs, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let params = args.params.params()?;
    let inputs = quantum_inputs(&args.s, &[], Some(1), params.clone())?;
    let s = inputs.s();
    let h = Hamiltonian::harmonic_oscillator(params.clone());
    let sym = symbolic(s, &h)?;

    let mut note = None;
    let mut numeric = None;
    let mut csv_rows = Vec::new();
    if !is_periodic(s) && !args.windowed {
        note = Some(
            "evolution skipped: s is not 2π-periodic (pass --windowed to run it anyway)"
                .to_string(),
        );
    } else {
        let grid = GridSpec::new(args.grid, Scheme::Spectral)?.windowed(args.windowed);
        let stand_in = periodic_oscillator(params);
        let f0 = DiffOp::mult(CoefFn::cos(1, 0, 1)?);
        let cfg = EvolveConfig {
            stride: args.stride,
            ..EvolveConfig::new(args.t, args.steps, args.law.into())
        };
        let run = evolve(s, &stand_in, &f0, &default_state(), &grid, &cfg)?;
        csv_rows = run.samples.clone();
        numeric = Some(Numeric {
            hamiltonian: stand_in.op.to_string(),
            observable: f0.to_string(),
            grid: args.grid,
            law: match args.law {
                LawArg::Covariant => "covariant",
                LawArg::Heisenberg => "heisenberg",
            },
            t_final: args.t,
            steps: args.steps,
            max_residual: run.samples.iter().map(|x| x.residual).fold(0.0, f64::max),
            samples: run
                .samples
                .iter()
                .map(|x| SampleRow {
                    t: x.t,
                    re_expect: x.expect.re,
                    im_expect: x.expect.im,
                    residual: x.residual,
                    rhs_norm: x.rhs_norm,
                })
                .collect(),
        });
    }
    if let (Some(path), Some(_)) = (&args.csv, &numeric) {
        let mut file = BufWriter::new(File::create(path)?);
        write_csv(&mut file, &csv_rows)?;
        file.flush()?;
    }

    let status = if sym.energy_law_holds {
        Status::Pass
    } else {
        Status::Fail
    };
    let report = Report {
        symbolic: sym,
        evolution: numeric,
        note,
    };
    if json {
        emit_json(out, &report)?;
        return Ok(status);
    }
    let sym = &report.symbolic;
    write_rows(
        out,
        &[
            ("H", sym.hamiltonian.clone()),
            ("s", sym.s.clone()),
            ("w", sym.w.clone()),
            ("i hbar w", sym.geomenergy.clone()),
            ("Dx/dt", sym.covariant_x.clone()),
            ("dx/dt", sym.heisenberg_x.clone()),
            ("DP/dt", sym.covariant_p.clone()),
            ("dP/dt", sym.heisenberg_p.clone()),
            ("dH/dt", sym.heisenberg_h.clone()),
            (
                "dH/dt + H*w",
                if sym.energy_law_holds { "0" } else { "nonzero" }.to_string(),
            ),
        ],
    )?;
    if let Some(note) = &report.note {
        writeln!(out, "{note}")?;
    }
    if let Some(num) = &report.evolution {
        writeln!(out)?;
        writeln!(
            out,
            "evolution of F0 = {} under the periodic stand-in Hamiltonian",
            num.observable
        )?;
        write_rows(
            out,
            &[
                ("H", num.hamiltonian.clone()),
                (
                    "grid",
                    format!(
                        "{} spectral{}",
                        num.grid,
                        if args.windowed { ", windowed" } else { "" }
                    ),
                ),
                ("law", num.law.to_string()),
                ("t", format!("{} in {} steps", num.t_final, num.steps)),
                ("max step residual", format!("{:.3e}", num.max_residual)),
            ],
        )?;
        match &args.csv {
            Some(path) => writeln!(out, "samples written to {}", path.display())?,
            None => {
                writeln!(out)?;
                write_csv(&mut *out, &csv_rows)?;
            }
        }
    }
    Ok(status)
}
