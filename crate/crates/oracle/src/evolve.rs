use std::io::{self, Write};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use ggc_core::bracket::check_real;
use ggc_core::{CoefFn, ComplexRational, DiffOp, Hamiltonian, Params};

use crate::error::{OracleError, Result};
use crate::grid::GridSpec;
use crate::ops::{cmatmul, discretize, sample, GridOp};

pub const CSV_HEADER: &str = "t,re_expect,im_expect,residual";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `dF/dt = (1/iℏ)([F,H] − H[s,F])`
    GeneralizedHeisenberg,
    /// `DF/dt = (1/iℏ)[F,H]_s`
    Covariant,
}

#[derive(Clone, Copy, Debug)]
pub struct EvolveConfig {
    pub t_final: f64,
    pub steps: usize,
    pub law: Law,
    /// Record every `stride`-th step; the last step is always recorded.
    pub stride: usize,
}

impl EvolveConfig {
    pub fn new(t_final: f64, steps: usize, law: Law) -> Self {
        EvolveConfig {
            t_final,
            steps,
            law,
            stride: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// `⟨ψ|F(t)|ψ⟩ / ⟨ψ|ψ⟩`.
    pub expect: Complex64,
    /// Relative Frobenius size of `covariant − generalized − F·ŵ`.
    pub residual: f64,
    /// Frobenius norm of the right-hand side of the chosen law.
    pub rhs_norm: f64,
}

#[derive(Clone, Debug)]
pub struct Evolution {
    pub samples: Vec<Sample>,
    pub final_op: GridOp,
    /// Matrix `ŵ = (1/iℏ)[s,H]`.
    pub w: GridOp,
}

fn to_f64(r: &ComplexRational) -> f64 {
    r.to_f64_pair().0
}

/// Right-hand sides of both laws for a fixed `s` and `H`.
struct System {
    h: DMatrix<Complex64>,
    s: DVector<Complex64>,
    /// `[s, H]`
    sh: DMatrix<Complex64>,
    flat: bool,
    inv_ihbar: Complex64,
}

impl System {
    fn new(h: DMatrix<Complex64>, s: DVector<Complex64>, hbar: f64) -> Self {
        let sh = s_commutator(&s, &h);
        let flat = s.iter().all(|v| *v == s[0]);
        System {
            h,
            s,
            sh,
            flat,
            inv_ihbar: Complex64::new(0.0, -1.0 / hbar),
        }
    }

    fn w(&self) -> DMatrix<Complex64> {
        &self.sh * self.inv_ihbar
    }

    fn commutator(&self, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        cmatmul(f, &self.h) - cmatmul(&self.h, f)
    }

    fn generalized(&self, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        if self.flat {
            return self.commutator(f) * self.inv_ihbar;
        }
        (self.commutator(f) - cmatmul(&self.h, &s_commutator(&self.s, f))) * self.inv_ihbar
    }

    fn covariant(&self, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        if self.flat {
            return self.commutator(f) * self.inv_ihbar;
        }
        let geo = cmatmul(f, &self.sh) - cmatmul(&self.h, &s_commutator(&self.s, f));
        (self.commutator(f) + geo) * self.inv_ihbar
    }

    fn rhs(&self, law: Law, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        match law {
            Law::GeneralizedHeisenberg => self.generalized(f),
            Law::Covariant => self.covariant(f),
        }
    }

    fn step_identity(&self, f: &DMatrix<Complex64>) -> f64 {
        let cov = self.covariant(f);
        let gen = self.generalized(f);
        let fw = cmatmul(f, &self.w());
        let scale = cov.norm().max(gen.norm()).max(fw.norm());
        let diff = (cov - gen - fw).norm();
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }
}

/// `diag(s)·M − M·diag(s)`.
fn s_commutator(s: &DVector<Complex64>, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |j, k| (s[j] - s[k]) * m[(j, k)])
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn expectation(f: &DMatrix<Complex64>, psi: &DVector<Complex64>) -> Complex64 {
    psi.dotc(&(f * psi)) / psi.dotc(psi)
}

fn finite(m: &DMatrix<Complex64>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Integrates `F(t)` from `F(0) = f0` with classic fourth-order Runge-Kutta.
pub fn evolve(
    s: &CoefFn,
    h: &Hamiltonian,
    f0: &DiffOp,
    psi: &CoefFn,
    grid: &GridSpec,
    cfg: &EvolveConfig,
) -> Result<Evolution> {
    if cfg.steps == 0 || cfg.stride == 0 {
        return Err(OracleError::Settings(
            "steps and stride must be at least 1".into(),
        ));
    }
    if !cfg.t_final.is_finite() {
        return Err(OracleError::Settings(format!(
            "final time {} is not finite",
            cfg.t_final
        )));
    }
    check_real(s)?;
    let hbar = to_f64(&h.params.hbar_c());
    let system = System::new(discretize(&h.op, grid)?.matrix, sample(s, grid)?, hbar);
    let psi = sample(psi, grid)?;
    let mut f = discretize(f0, grid)?.matrix;

    let dt = cfg.t_final / cfg.steps as f64;
    let record = |t: f64, f: &DMatrix<Complex64>| Sample {
        t,
        expect: expectation(f, &psi),
        residual: system.step_identity(f),
        rhs_norm: system.rhs(cfg.law, f).norm(),
    };
    let mut samples = vec![record(0.0, &f)];
    for step in 1..=cfg.steps {
        let k1 = system.rhs(cfg.law, &f);
        let k2 = system.rhs(cfg.law, &(&f + &k1 * c(0.5 * dt)));
        let k3 = system.rhs(cfg.law, &(&f + &k2 * c(0.5 * dt)));
        let k4 = system.rhs(cfg.law, &(&f + &k3 * c(dt)));
        f += (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(dt / 6.0);
        let t = step as f64 * dt;
        if !finite(&f) {
            return Err(OracleError::NonFinite { step, t });
        }
        if step % cfg.stride == 0 || step == cfg.steps {
            samples.push(record(t, &f));
        }
    }
    Ok(Evolution {
        samples,
        final_op: GridOp {
            matrix: f,
            grid: *grid,
        },
        w: GridOp {
            matrix: system.w(),
            grid: *grid,
        },
    })
}

/// `e^{iHt/ℏ} F₀ e^{−iHt/ℏ}` by dense matrix exponentials.
pub fn conjugation_oracle(
    h: &DMatrix<Complex64>,
    f0: &DMatrix<Complex64>,
    t: f64,
    hbar: f64,
) -> DMatrix<Complex64> {
    let phase = Complex64::new(0.0, t / hbar);
    let forward = (h * phase).exp();
    let backward = (h * -phase).exp();
    cmatmul(&cmatmul(&forward, f0), &backward)
}

/// `−ℏ²/(2m) ∂² + mω²(1 − cos x)`, which matches the harmonic oscillator to
/// second order at `x = 0` and is periodic on the grid.
pub fn periodic_oscillator(params: Params) -> Hamiltonian {
    let kinetic = Hamiltonian::free_particle(1, params.clone()).op;
    let stiffness = ComplexRational::real(&params.mass * &params.omega * &params.omega);
    let well = &CoefFn::one(1) - &CoefFn::cos(1, 0, 1).expect("dimension one");
    Hamiltonian::custom(&kinetic + &DiffOp::mult(well.scale(&stiffness)), params)
}

pub fn write_csv<W: Write>(mut out: W, samples: &[Sample]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in samples {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t, s.expect.re, s.expect.im, s.residual
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Scheme;

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let sample = Sample {
            t: 0.5,
            expect: Complex64::new(1.0, -0.25),
            residual: 0.0,
            rhs_norm: 0.0,
        };
        write_csv(&mut buf, &[sample]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("5.0000000000000000e-1,1.0000000000000000e0,-2.5000000000000000e-1,0.0000000000000000e0")
        );
    }

    #[test]
    fn rejects_zero_steps() {
        let g = GridSpec::new(16, Scheme::Spectral).unwrap();
        let h = periodic_oscillator(Params::default());
        let cfg = EvolveConfig::new(1.0, 0, Law::Covariant);
        let one = CoefFn::one(1);
        assert!(matches!(
            evolve(&one, &h, &h.op, &one, &g, &cfg),
            Err(OracleError::Settings(_))
        ));
    }

    #[test]
    fn blow_up_is_reported() {
        let g = GridSpec::new(16, Scheme::Spectral).unwrap();
        let h = periodic_oscillator(Params::default());
        let cfg = EvolveConfig::new(1e12, 20, Law::GeneralizedHeisenberg);
        let one = CoefFn::one(1);
        let f0 = DiffOp::mult(CoefFn::cos(1, 0, 1).unwrap());
        assert!(matches!(
            evolve(&one, &h, &f0, &one, &g, &cfg),
            Err(OracleError::NonFinite { .. })
        ));
    }

    #[test]
    fn oscillator_is_real_symmetric_on_the_grid() {
        let g = GridSpec::new(32, Scheme::Spectral).unwrap();
        let h = discretize(&periodic_oscillator(Params::default()).op, &g).unwrap();
        assert!(h.hermitian_defect() < 1e-12);
    }
}
