//! Quantum covariant Hamiltonian system.
//!
//! For a Hamiltonian `H` and structural function `s`:
//!
//! ```text
//! ŵ        = (1/iℏ) [s, H]                       G-dynamics
//! dF/dt    = (1/iℏ) ([F, H] − H∘[s, F])          generalized Heisenberg
//! DF/dt    = (1/iℏ) [F, H]_s = dF/dt + F∘ŵ        covariant dynamics
//! p̂_j      = −iℏ (∂_j + ∂_j s)                    geomentum
//! ```

use num_rational::BigRational;
use num_traits::Signed;

use crate::bracket::{self, BracketReport};
use crate::coeff::CoefFn;
use crate::diffop::{DiffOp, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::{rational, ComplexRational};

/// Physical constants; all default to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub hbar: BigRational,
    pub mass: BigRational,
    pub omega: BigRational,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            hbar: rational(1, 1),
            mass: rational(1, 1),
            omega: rational(1, 1),
        }
    }
}

impl Params {
    pub fn new(hbar: BigRational, mass: BigRational, omega: BigRational) -> Result<Self> {
        if !hbar.is_positive() {
            return Err(Error::InvalidParams(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if !mass.is_positive() {
            return Err(Error::InvalidParams(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if omega.is_negative() {
            return Err(Error::InvalidParams(format!(
                "omega must be non-negative, got {omega}"
            )));
        }
        Ok(Params { hbar, mass, omega })
    }

    pub fn hbar_c(&self) -> ComplexRational {
        ComplexRational::real(self.hbar.clone())
    }

    /// `iℏ`.
    pub fn i_hbar(&self) -> ComplexRational {
        ComplexRational::imag(self.hbar.clone())
    }

    /// `1/(iℏ) = −i/ℏ`.
    pub fn inv_i_hbar(&self) -> ComplexRational {
        ComplexRational::imag(-(BigRational::from_integer(1.into()) / &self.hbar))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    HarmonicOscillator,
    FreeParticle,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hamiltonian {
    pub op: DiffOp,
    pub params: Params,
    pub kind: HamiltonianKind,
}

impl Hamiltonian {
    /// `−ℏ²/(2m) ∂² + (mω²/2) x²` on the line.
    pub fn harmonic_oscillator(params: Params) -> Self {
        let kinetic = Self::kinetic(1, &params);
        let spring = &params.mass * &params.omega * &params.omega / rational(2, 1);
        let x = CoefFn::coord(1, 0).expect("dimension one");
        let potential = DiffOp::mult((&x * &x).scale(&spring.into()));
        Hamiltonian {
            op: &kinetic + &potential,
            params,
            kind: HamiltonianKind::HarmonicOscillator,
        }
    }

    /// `−ℏ²/(2m) Σ_j ∂_j²`.
    pub fn free_particle(dim: usize, params: Params) -> Self {
        Hamiltonian {
            op: Self::kinetic(dim, &params),
            params,
            kind: HamiltonianKind::FreeParticle,
        }
    }

    pub fn custom(op: DiffOp, params: Params) -> Self {
        Hamiltonian {
            op,
            params,
            kind: HamiltonianKind::Custom,
        }
    }

    fn kinetic(dim: usize, params: &Params) -> DiffOp {
        let c = -(&params.hbar * &params.hbar) / (rational(2, 1) * &params.mass);
        let mut op = DiffOp::zero(dim);
        for j in 0..dim {
            let mut alpha = MultiIndex::zero(dim);
            alpha.0[j] = 2;
            op = &op + &DiffOp::from_term(alpha, CoefFn::constant(dim, c.clone().into()));
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

/// `−iℏ ∂_j`.
pub fn classical_momentum(dim: usize, j: usize, params: &Params) -> Result<DiffOp> {
    Ok(DiffOp::partial(dim, j)?.scale(&-params.i_hbar()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GDynamics {
    pub w_op: DiffOp,
    pub s_used: CoefFn,
    /// Imaginary geomenergy `iℏ ŵ`.
    pub geomenergy: DiffOp,
}

fn check_s(s: &CoefFn, dim: usize) -> Result<()> {
    if s.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: s.dim(),
        });
    }
    bracket::check_real(s)
}

/// `ŵ = (1/iℏ)[s, H]`.
pub fn gdynamics(s: &CoefFn, h: &Hamiltonian) -> Result<GDynamics> {
    check_s(s, h.dim())?;
    let w_op = DiffOp::mult(s.clone())
        .qpb(&h.op)?
        .scale(&h.params.inv_i_hbar());
    let geomenergy = w_op.scale(&h.params.i_hbar());
    Ok(GDynamics {
        w_op,
        s_used: s.clone(),
        geomenergy,
    })
}

/// `dF/dt = (1/iℏ)([F, H] − H∘[s, F])`.
pub fn gen_heisenberg_rhs(s: &CoefFn, h: &Hamiltonian, f: &DiffOp) -> Result<DiffOp> {
    check_s(s, h.dim())?;
    let commutator = f.qpb(&h.op)?;
    let drift = h.op.compose(&DiffOp::mult(s.clone()).qpb(f)?)?;
    Ok((&commutator - &drift).scale(&h.params.inv_i_hbar()))
}

/// `DF/dt = (1/iℏ)[F, H]_s`.
pub fn covariant_rhs(s: &CoefFn, h: &Hamiltonian, f: &DiffOp) -> Result<DiffOp> {
    let report = bracket::qcpb(s, f, &h.op)?;
    Ok(report.total.scale(&h.params.inv_i_hbar()))
}

/// True when `[F, H] = H∘[s, F]`, i.e. `F` is stationary under the
/// generalized Heisenberg law.
pub fn is_heisenberg_equilibrium(s: &CoefFn, h: &Hamiltonian, f: &DiffOp) -> Result<bool> {
    check_s(s, h.dim())?;
    let lhs = f.qpb(&h.op)?;
    let rhs = h.op.compose(&DiffOp::mult(s.clone()).qpb(f)?)?;
    Ok(lhs == rhs)
}

/// `p̂_j = −iℏ(∂_j + ∂_j s)`.
pub fn geomentum(j: usize, s: &CoefFn, params: &Params) -> Result<DiffOp> {
    let dim = s.dim();
    let d = DiffOp::partial(dim, j)?;
    let ds = DiffOp::mult(s.diff(j)?);
    Ok((&d + &ds).scale(&-params.i_hbar()))
}

/// `θ_ij = δ_ij + x_i ∂_j s`.
pub fn theta(s: &CoefFn, i: usize, j: usize) -> Result<CoefFn> {
    let dim = s.dim();
    let mut out = &CoefFn::coord(dim, i)? * &s.diff(j)?;
    if i == j {
        out = &out + &CoefFn::one(dim);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcrPair {
    PositionMomentum,
    PositionPosition,
    MomentumMomentum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcrEntry {
    pub pair: CcrPair,
    pub i: usize,
    pub j: usize,
    pub report: BracketReport,
    /// `iℏθ_ij·` for position/momentum, zero otherwise.
    pub expected: DiffOp,
}

impl CcrEntry {
    pub fn holds(&self) -> bool {
        self.report.total == self.expected
    }

    pub fn residual(&self) -> DiffOp {
        &self.report.total - &self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcrTable {
    pub entries: Vec<CcrEntry>,
    /// `theta[i][j] = θ_ij`.
    pub theta: Vec<Vec<CoefFn>>,
}

impl CcrTable {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(CcrEntry::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CcrEntry> {
        self.entries.iter().filter(|e| !e.holds())
    }
}

/// Covariant brackets of every position/geomentum pair in `dim` coordinates.
pub fn geometric_ccr_suite(s: &CoefFn, dim: usize, params: &Params) -> Result<CcrTable> {
    if dim == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1".into()));
    }
    check_s(s, dim)?;
    let xs: Vec<DiffOp> = (0..dim)
        .map(|i| DiffOp::position(dim, i))
        .collect::<Result<_>>()?;
    let ps: Vec<DiffOp> = (0..dim)
        .map(|j| geomentum(j, s, params))
        .collect::<Result<_>>()?;
    let zero = DiffOp::zero(dim);
    let mut entries = Vec::new();
    let mut thetas = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let th = theta(s, i, j)?;
            entries.push(CcrEntry {
                pair: CcrPair::PositionMomentum,
                i,
                j,
                report: bracket::qcpb(s, &xs[i], &ps[j])?,
                expected: DiffOp::mult(th.scale(&params.i_hbar())),
            });
            row.push(th);
        }
        thetas.push(row);
    }
    for i in 0..dim {
        for j in 0..dim {
            entries.push(CcrEntry {
                pair: CcrPair::PositionPosition,
                i,
                j,
                report: bracket::qcpb(s, &xs[i], &xs[j])?,
                expected: zero.clone(),
            });
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            entries.push(CcrEntry {
                pair: CcrPair::MomentumMomentum,
                i,
                j,
                report: bracket::qcpb(s, &ps[i], &ps[j])?,
                expected: zero.clone(),
            });
        }
    }
    Ok(CcrTable {
        entries,
        theta: thetas,
    })
}
