use std::io::Write;

use clap::Args;

use super::emit_json;
use crate::error::{CliError, Status};
use crate::suite::run_suite;

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
}

pub fn run(args: &VerifyArgs, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    if args.dim == 0 || args.trials == 0 {
        return Err(CliError::Domain(
            "--dim and --trials must be at least 1".into(),
        ));
    }
    let report = run_suite(args.seed, args.trials, args.dim)?;
    let status = if report.all_pass {
        Status::Pass
    } else {
        Status::Fail
    };
    if json {
        emit_json(out, &report)?;
        return Ok(status);
    }
    writeln!(
        out,
        "seed {}, {} trials, dimension {}",
        report.seed, report.trials, report.dim
    )?;
    let width = report
        .properties
        .iter()
        .map(|p| p.name.len())
        .max()
        .unwrap_or(0);
    for p in &report.properties {
        let verdict = if p.holds() { "PASS" } else { "FAIL" };
        write!(
            out,
            "{verdict}  {:<width$}  {}/{}",
            p.name, p.passed, report.trials
        )?;
        if let Some(t) = p.first_failure {
            write!(out, "  (first failure: trial {t})")?;
        }
        writeln!(out)?;
    }
    let failed = report.properties.iter().filter(|p| !p.holds()).count();
    if failed == 0 {
        writeln!(out, "all {} properties hold", report.properties.len())?;
    } else {
        writeln!(
            out,
            "{failed} of {} properties failed",
            report.properties.len()
        )?;
    }
    Ok(status)
}
