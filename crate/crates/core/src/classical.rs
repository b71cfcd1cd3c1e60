//! Classical brackets on polynomial phase-space functions.
//!
//! Phase space has coordinates `x_1..x_n, p_1..p_n`, stored 0-based as
//! `0..n` and `n..2n` of the underlying [`CoefFn`].

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::CoefFn;
use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

/// A polynomial in `x_1..x_n, p_1..p_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseFn {
    n: usize,
    f: CoefFn,
}

impl PhaseFn {
    /// Wraps a polynomial over `2n` coordinates.
    pub fn new(f: CoefFn) -> Result<Self> {
        if !f.dim().is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "phase space needs an even number of coordinates, got {}",
                f.dim()
            )));
        }
        if !f.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        Ok(PhaseFn { n: f.dim() / 2, f })
    }

    pub fn zero(n: usize) -> Self {
        PhaseFn {
            n,
            f: CoefFn::zero(2 * n),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        PhaseFn {
            n,
            f: CoefFn::constant(2 * n, c.into()),
        }
    }

    /// `x_j` (0-based `j < n`).
    pub fn position(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, dim: n });
        }
        Ok(PhaseFn {
            n,
            f: CoefFn::coord(2 * n, j)?,
        })
    }

    /// `p_k` (0-based `k < n`).
    pub fn momentum(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, dim: n });
        }
        Ok(PhaseFn {
            n,
            f: CoefFn::coord(2 * n, n + k)?,
        })
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_coef(&self) -> &CoefFn {
        &self.f
    }

    pub fn into_coef(self) -> CoefFn {
        self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.f.is_real()
    }

    /// `∂/∂z_a` over all `2n` coordinates.
    pub fn diff(&self, a: usize) -> Result<PhaseFn> {
        Ok(PhaseFn {
            n: self.n,
            f: self.f.diff(a)?,
        })
    }

    pub fn scale(&self, c: &BigRational) -> PhaseFn {
        PhaseFn {
            n: self.n,
            f: self.f.scale(&c.clone().into()),
        }
    }

    fn check(&self, other: &PhaseFn) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: 2 * self.n,
                right: 2 * other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PhaseFn) -> Result<PhaseFn> {
        self.check(other)?;
        Ok(PhaseFn {
            n: self.n,
            f: &self.f + &other.f,
        })
    }

    pub fn try_sub(&self, other: &PhaseFn) -> Result<PhaseFn> {
        self.check(other)?;
        Ok(PhaseFn {
            n: self.n,
            f: &self.f - &other.f,
        })
    }

    pub fn try_mul(&self, other: &PhaseFn) -> Result<PhaseFn> {
        self.check(other)?;
        Ok(PhaseFn {
            n: self.n,
            f: &self.f * &other.f,
        })
    }
}

/// Prints with `x1..xn, p1..pn`.
impl fmt::Display for PhaseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let names = move |a: usize| {
            if a < n {
                format!("x{}", a + 1)
            } else {
                format!("p{}", a - n + 1)
            }
        };
        self.f.write_with(f, &names)
    }
}

/// Antisymmetric rational structure matrix `J` of size `2n × 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMatrix {
    n: usize,
    rows: Vec<Vec<BigRational>>,
}

impl StructureMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || !size.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "structure matrix needs an even positive size, got {size}"
            )));
        }
        for row in &rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    left: size,
                    right: row.len(),
                });
            }
        }
        for i in 0..size {
            for j in i..size {
                if rows[i][j] != -&rows[j][i] {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(StructureMatrix { n: size / 2, rows })
    }

    /// `[[0, I], [-I, 0]]`.
    pub fn canonical(n: usize) -> Self {
        let size = 2 * n;
        let mut rows = vec![vec![BigRational::zero(); size]; size];
        for k in 0..n {
            rows[k][n + k] = BigRational::one();
            rows[n + k][k] = -BigRational::one();
        }
        StructureMatrix { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn is_canonical(&self) -> bool {
        *self == StructureMatrix::canonical(self.n)
    }

    fn check(&self, f: &PhaseFn) -> Result<()> {
        if f.n != self.n {
            return Err(Error::DimensionMismatch {
                left: 2 * self.n,
                right: 2 * f.n,
            });
        }
        Ok(())
    }
}

fn gradient(f: &PhaseFn) -> Vec<CoefFn> {
    f.f.gradient()
}

/// `∇fᵀ J ∇g`.
pub fn gpb(f: &PhaseFn, g: &PhaseFn, j: &StructureMatrix) -> Result<PhaseFn> {
    f.check(g)?;
    j.check(f)?;
    let (df, dg) = (gradient(f), gradient(g));
    let size = 2 * f.n;
    let mut acc = CoefFn::zero(size);
    for a in 0..size {
        if df[a].is_zero() {
            continue;
        }
        // Σ_b J_ab ∂_b g first, so each ∂_a f multiplies once.
        let mut row = CoefFn::zero(size);
        for b in 0..size {
            let jab = j.get(a, b);
            if !jab.is_zero() && !dg[b].is_zero() {
                row = &row + &dg[b].scale(&ComplexRational::real(jab.clone()));
            }
        }
        acc = &acc + &(&df[a] * &row);
    }
    Ok(PhaseFn { n: f.n, f: acc })
}

/// `f·{s,g} − g·{s,f}`.
pub fn geobracket(s: &PhaseFn, f: &PhaseFn, g: &PhaseFn, j: &StructureMatrix) -> Result<PhaseFn> {
    let sg = gpb(s, g, j)?;
    let sf = gpb(s, f, j)?;
    f.try_mul(&sg)?.try_sub(&g.try_mul(&sf)?)
}

/// `{f,g}_GPB + G(s,f,g)`.
pub fn gspb(s: &PhaseFn, f: &PhaseFn, g: &PhaseFn, j: &StructureMatrix) -> Result<PhaseFn> {
    gpb(f, g, j)?.try_add(&geobracket(s, f, g, j)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynamicsKind {
    /// `Df/dt = {f,H}` with the full GSPB.
    Gchs,
    /// `ḟ = {f,H}_GPB − H·{s,f}_GPB`.
    Tghs,
    /// `w = {s,H}_GPB`; ignores `f`.
    Sdyn,
}

pub fn dynamics_rhs(
    s: &PhaseFn,
    h: &PhaseFn,
    f: &PhaseFn,
    j: &StructureMatrix,
    kind: DynamicsKind,
) -> Result<PhaseFn> {
    match kind {
        DynamicsKind::Gchs => gspb(s, f, h, j),
        DynamicsKind::Tghs => gpb(f, h, j)?.try_sub(&h.try_mul(&gpb(s, f, j)?)?),
        DynamicsKind::Sdyn => {
            f.check(s)?;
            gpb(s, h, j)
        }
    }
}

/// `D_a H = ∂_a H + H·∂_a s` for every phase coordinate `a`.
pub fn covariant_gradient(s: &PhaseFn, h: &PhaseFn) -> Result<Vec<PhaseFn>> {
    s.check(h)?;
    let (ds, dh) = (gradient(s), gradient(h));
    Ok(dh
        .into_iter()
        .zip(ds)
        .map(|(dh_a, ds_a)| PhaseFn {
            n: h.n,
            f: &dh_a + &(&h.f * &ds_a),
        })
        .collect())
}

/// `ż_k = J_ka D_a H` for every phase coordinate `k`.
pub fn thorough_hamilton_rhs(
    s: &PhaseFn,
    h: &PhaseFn,
    j: &StructureMatrix,
) -> Result<Vec<PhaseFn>> {
    j.check(h)?;
    let dh = covariant_gradient(s, h)?;
    let size = 2 * h.n;
    Ok((0..size)
        .map(|k| {
            let mut acc = CoefFn::zero(size);
            for (a, d) in dh.iter().enumerate() {
                let jka = j.get(k, a);
                if !jka.is_zero() {
                    acc = &acc + &d.f.scale(&ComplexRational::real(jka.clone()));
                }
            }
            PhaseFn { n: h.n, f: acc }
        })
        .collect())
}

fn check_pair(n: usize, xj: usize, pk: usize) -> Result<()> {
    for idx in [xj, pk] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, dim: n });
        }
    }
    Ok(())
}

/// The tabulated closed form `δ_jk + x_j ∂_{x_k} s + p_k J_jq ∂_q s`.
pub fn cche_table(s: &PhaseFn, xj: usize, pk: usize, j: &StructureMatrix) -> Result<PhaseFn> {
    j.check(s)?;
    let n = s.n;
    check_pair(n, xj, pk)?;
    let ds = gradient(s);
    let delta = if xj == pk {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    let x = CoefFn::coord(2 * n, xj)?;
    let p = CoefFn::coord(2 * n, n + pk)?;
    let mut jq = CoefFn::zero(2 * n);
    for (q, d) in ds.iter().enumerate() {
        let c = j.get(xj, q);
        if !c.is_zero() {
            jq = &jq + &d.scale(&ComplexRational::real(c.clone()));
        }
    }
    let f = &(&CoefFn::constant(2 * n, delta.into()) + &(&x * &ds[pk])) + &(&p * &jq);
    Ok(PhaseFn { n, f })
}

/// `{x_j, p_k}` in closed form for any antisymmetric `J`:
/// `J_{j,n+k} + x_j Σ_a J_{a,n+k} ∂_a s + p_k J_jq ∂_q s`.
pub fn cche_general(s: &PhaseFn, xj: usize, pk: usize, j: &StructureMatrix) -> Result<PhaseFn> {
    j.check(s)?;
    let n = s.n;
    check_pair(n, xj, pk)?;
    let ds = gradient(s);
    let x = CoefFn::coord(2 * n, xj)?;
    let p = CoefFn::coord(2 * n, n + pk)?;
    let mut col = CoefFn::zero(2 * n);
    let mut jq = CoefFn::zero(2 * n);
    for (a, d) in ds.iter().enumerate() {
        let c = j.get(a, n + pk);
        if !c.is_zero() {
            col = &col + &d.scale(&ComplexRational::real(c.clone()));
        }
        let c = j.get(xj, a);
        if !c.is_zero() {
            jq = &jq + &d.scale(&ComplexRational::real(c.clone()));
        }
    }
    let lead = CoefFn::constant(2 * n, j.get(xj, n + pk).clone().into());
    let f = &(&lead + &(&x * &col)) + &(&p * &jq);
    Ok(PhaseFn { n, f })
}
