//! Randomized identity suite behind `ggc verify`.

use rayon::prelude::*;
use serde::Serialize;

use ggc_core::bracket::{hermitian_split_qcpb, jacobi_residuals, qcpb, s_transform};
use ggc_core::quantum::{geometric_ccr_suite, CcrPair};
use ggc_core::sample::trial_seed;
use ggc_core::{CoefFn, DiffOp, Params, Result, Sampler, TransformVariant};

pub const PROPERTIES: [&str; 12] = [
    "antisymmetry",
    "bilinearity",
    "generalized leibniz",
    "jacobi N_cc = 0",
    "jacobi N_cl = N_cc + N_ll",
    "jacobi N_cl = 0",
    "s-transform A*B^(s) - B*A^(s) - [A,B]*s",
    "s-transform A*B^(sg) - B*A^(sg)",
    "ccr [x_i,p_j] = i hbar theta_ij",
    "ccr [x_i,x_j] = 0",
    "ccr [p_i,p_j] = 0",
    "hermitian split",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<u64>,
}

impl PropertyResult {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: u64,
    pub dim: usize,
    pub properties: Vec<PropertyResult>,
    pub all_pass: bool,
}

struct Trial {
    s: CoefFn,
    a: DiffOp,
    b: DiffOp,
    c: DiffOp,
    d: DiffOp,
    k: ggc_core::ComplexRational,
}

impl Trial {
    fn new(seed: u64, dim: usize) -> Self {
        let mut rng = Sampler::new(seed);
        let s = rng.structure_fn(dim);
        let (a, b, c, d) = (
            rng.diffop(dim),
            rng.diffop(dim),
            rng.diffop(dim),
            rng.diffop(dim),
        );
        Trial {
            s,
            a,
            b,
            c,
            d,
            k: rng.complex(),
        }
    }
}

fn total(s: &CoefFn, a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    Ok(qcpb(s, a, b)?.total)
}

/// One flag per entry of [`PROPERTIES`].
pub fn check_trial(seed: u64, dim: usize) -> Result<Vec<bool>> {
    let Trial { s, a, b, c, d, k } = Trial::new(seed, dim);
    let sop = DiffOp::mult(s.clone());
    let ab = total(&s, &a, &b)?;

    let antisymmetry = ab == -&total(&s, &b, &a)? && total(&s, &a, &a)?.is_zero();
    let combo = &a.scale(&k) + &c;
    let bilinear = total(&s, &combo, &b)? == &ab.scale(&k) + &total(&s, &c, &b)?;
    let cb = c.compose(&b)?;
    let leibniz = total(&s, &a, &cb)?
        == &(&(&c * &a.qpb(&b)?) + &(&a.qpb(&c)? * &b))
            + &ggc_core::bracket::geomutator(&s, &a, &cb)?;

    let jacobi = jacobi_residuals(&s, &a, &b, &c)?;
    let plain = {
        let (a_s, b_s) = (
            s_transform(&s, &a, TransformVariant::Plain)?,
            s_transform(&s, &b, TransformVariant::Plain)?,
        );
        ab == &(&(&a * &b_s) - &(&b * &a_s)) - &(&a.qpb(&b)? * &sop)
    };
    let sg = {
        let (a_sg, b_sg) = (
            s_transform(&s, &a, TransformVariant::Sg)?,
            s_transform(&s, &b, TransformVariant::Sg)?,
        );
        ab == &(&a * &b_sg) - &(&b * &a_sg)
    };

    let ccr = geometric_ccr_suite(&s, dim, &Params::default())?;
    let rows = |pair: CcrPair| {
        ccr.entries
            .iter()
            .filter(|e| e.pair == pair)
            .all(|e| e.holds())
    };

    Ok(vec![
        antisymmetry,
        bilinear,
        leibniz,
        jacobi.cc.is_zero(),
        jacobi.decomposition_holds(),
        jacobi.cl.is_zero(),
        plain,
        sg,
        rows(CcrPair::PositionMomentum),
        rows(CcrPair::PositionPosition),
        rows(CcrPair::MomentumMomentum),
        hermitian_split_qcpb(&s, &a, &b, &c, &d)?.holds(),
    ])
}

/// Runs `trials` independent trials in parallel; the report does not depend
/// on scheduling.
pub fn run_suite(seed: u64, trials: u64, dim: usize) -> Result<SuiteReport> {
    let flags: Vec<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| check_trial(trial_seed(seed, t), dim))
        .collect::<Result<_>>()?;
    let properties: Vec<PropertyResult> = PROPERTIES
        .iter()
        .enumerate()
        .map(|(p, &name)| {
            let passed = flags.iter().filter(|f| f[p]).count();
            PropertyResult {
                name,
                passed,
                failed: flags.len() - passed,
                first_failure: flags.iter().position(|f| !f[p]).map(|t| t as u64),
            }
        })
        .collect();
    let all_pass = properties.iter().all(PropertyResult::holds);
    Ok(SuiteReport {
        seed,
        trials,
        dim,
        properties,
        all_pass,
    })
}
