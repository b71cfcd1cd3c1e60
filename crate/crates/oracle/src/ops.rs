use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use ggc_core::bracket::check_real;
use ggc_core::{CoefFn, DiffOp};

use crate::error::{OracleError, Result};
use crate::grid::GridSpec;

/// Dense matrix realization of an operator.
#[derive(Clone, Debug)]
pub struct GridOp {
    pub matrix: DMatrix<Complex64>,
    pub grid: GridSpec,
}

impl GridOp {
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * v
    }

    /// Largest entry of `M − M†` relative to the largest entry of `M`.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.matrix.camax().max(f64::MIN_POSITIVE);
        (&self.matrix - self.matrix.adjoint()).camax() / scale
    }

    /// Eigenvalues from a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let schur = self
            .matrix
            .clone()
            .try_schur(1e-13, 10_000)
            .ok_or(OracleError::NoConvergence)?;
        let mut eig: Vec<Complex64> = schur
            .eigenvalues()
            .ok_or(OracleError::NoConvergence)?
            .iter()
            .copied()
            .collect();
        eig.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        Ok(eig)
    }
}

/// `2π`-periodic: only `exp(i k x)` terms with integer `k`.
pub fn is_periodic(f: &CoefFn) -> bool {
    f.dim() == 1
        && f.terms().all(|(key, _)| {
            key.powers[0] == 0 && key.freq[0].is_imaginary() && key.freq[0].im.is_integer()
        })
}

fn check_coefficient(f: &CoefFn, grid: &GridSpec) -> Result<()> {
    if f.dim() != 1 {
        return Err(OracleError::Dimension(f.dim()));
    }
    if grid.requires_periodic() && !is_periodic(f) {
        return Err(OracleError::NonPeriodic(f.to_string()));
    }
    Ok(())
}

/// Complex product through four real products, which use the fast `f64`
/// kernel.
pub(crate) fn cmatmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

fn scale_rows(m: &mut DMatrix<Complex64>, v: &DVector<Complex64>) {
    for (j, mut row) in m.row_iter_mut().enumerate() {
        row *= v[j];
    }
}

/// Samples `f` at the grid points.
pub fn sample(f: &CoefFn, grid: &GridSpec) -> Result<DVector<Complex64>> {
    check_coefficient(f, grid)?;
    let xs = grid.points();
    Ok(DVector::from_iterator(
        grid.n(),
        xs.iter().map(|&x| f.eval(&[x])),
    ))
}

/// `Σ_α diag(c_α) D^α`.
pub fn discretize(op: &DiffOp, grid: &GridSpec) -> Result<GridOp> {
    if op.dim() != 1 {
        return Err(OracleError::Dimension(op.dim()));
    }
    let n = grid.n();
    let mut matrix = DMatrix::<Complex64>::zeros(n, n);
    for (alpha, c) in op.terms() {
        let diag = sample(c, grid)?;
        let mut term = grid.derivative_power(alpha.0[0] as usize);
        scale_rows(&mut term, &diag);
        matrix += term;
    }
    Ok(GridOp {
        matrix,
        grid: *grid,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    Qpb,
    Geomutator,
    Qcpb,
}

/// Commutator, geomutator or covariant bracket built from matrix products.
pub fn matrix_bracket(
    s: &CoefFn,
    a: &DiffOp,
    b: &DiffOp,
    grid: &GridSpec,
    kind: BracketKind,
) -> Result<GridOp> {
    check_real(s)?;
    let a = discretize(a, grid)?.matrix;
    let b = discretize(b, grid)?.matrix;
    let sv = sample(s, grid)?;
    // [s·, M] entrywise: (s_j − s_k) M_jk.
    let s_comm = |m: &DMatrix<Complex64>| {
        DMatrix::from_fn(m.nrows(), m.ncols(), |j, k| (sv[j] - sv[k]) * m[(j, k)])
    };
    let qpb = || cmatmul(&a, &b) - cmatmul(&b, &a);
    let geo = || cmatmul(&a, &s_comm(&b)) - cmatmul(&b, &s_comm(&a));
    let matrix = match kind {
        BracketKind::Qpb => qpb(),
        BracketKind::Geomutator => geo(),
        BracketKind::Qcpb => qpb() + geo(),
    };
    Ok(GridOp {
        matrix,
        grid: *grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Scheme;
    use ggc_core::{ComplexRational, MultiIndex};

    fn e(k: i64) -> CoefFn {
        CoefFn::exp_linear(vec![ComplexRational::imag(ggc_core::scalar::rational(
            k, 1,
        ))])
    }

    #[test]
    fn split_product_matches_direct_product() {
        let a = DMatrix::from_fn(5, 4, |j, k| {
            Complex64::new(j as f64 - 1.5, (k * j) as f64 * 0.3)
        });
        let b = DMatrix::from_fn(4, 3, |j, k| Complex64::new((j + k) as f64, 1.0 - k as f64));
        assert!((cmatmul(&a, &b) - &a * &b).camax() < 1e-12);
    }

    #[test]
    fn multiplication_is_diagonal() {
        let g = GridSpec::new(32, Scheme::Spectral).unwrap();
        let m = discretize(&DiffOp::mult(e(1)), &g).unwrap().matrix;
        let xs = g.points();
        for j in 0..32 {
            for k in 0..32 {
                let expected = if j == k {
                    Complex64::from_polar(1.0, xs[j])
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!((m[(j, k)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn periodicity_policy() {
        let x = CoefFn::coord(1, 0).unwrap();
        let spectral = GridSpec::new(32, Scheme::Spectral).unwrap();
        assert!(matches!(
            discretize(&DiffOp::mult(x.clone()), &spectral),
            Err(OracleError::NonPeriodic(_))
        ));
        assert!(discretize(&DiffOp::mult(x.clone()), &spectral.windowed(true)).is_ok());
        let central = GridSpec::new(32, Scheme::Central2).unwrap();
        assert!(discretize(&DiffOp::mult(x), &central).is_ok());
        let half = CoefFn::exp_linear(vec![ComplexRational::from_parts((0, 1), (1, 2))]);
        assert!(!is_periodic(&half));
        assert!(is_periodic(&CoefFn::sin(1, 0, 3).unwrap()));
        assert!(matches!(
            discretize(&DiffOp::identity(2), &spectral),
            Err(OracleError::Dimension(2))
        ));
    }

    #[test]
    fn self_geomutator_vanishes() {
        let g = GridSpec::new(64, Scheme::Spectral).unwrap();
        let s = CoefFn::cos(1, 0, 1).unwrap();
        let a = DiffOp::from_term(MultiIndex(vec![2]), e(1));
        let m = matrix_bracket(&s, &a, &a, &g, BracketKind::Geomutator).unwrap();
        assert!(m.matrix.camax() < 1e-9 * discretize(&a, &g).unwrap().matrix.camax());
    }

    #[test]
    fn derivative_spectrum_is_imaginary() {
        let g = GridSpec::new(16, Scheme::Spectral).unwrap();
        let d = discretize(&DiffOp::partial(1, 0).unwrap(), &g).unwrap();
        let eig = d.eigenvalues().unwrap();
        for z in &eig {
            assert!(z.re.abs() < 1e-9);
            let k = z.im.round();
            assert!((z.im - k).abs() < 1e-9 && k.abs() <= 8.0);
        }
        assert!(d.hermitian_defect() > 1.0);
    }
}
