use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use ggc_core::{CoefFn, DiffOp};

use crate::error::Result;
use crate::ops::{cmatmul, discretize, sample, GridOp};

/// Distances between an exact operator and a matrix, both relative to the
/// exact side (absolute when the exact side vanishes).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    /// `‖Aψ − Mψ‖₂ / ‖Aψ‖₂` with `Aψ` evaluated exactly before sampling.
    pub action: f64,
    /// `‖(A_h − M) P‖₂ / ‖A_h P‖₂`, `P` the Fourier modes with `|k| ≤ N/4`
    /// and `A_h` the discretized exact operator.
    pub spectral: f64,
    pub rows: usize,
    pub modes: usize,
}

impl Residual {
    pub fn within(&self, tol: f64) -> bool {
        self.action <= tol && self.spectral <= tol
    }

    pub fn worst(&self) -> f64 {
        self.action.max(self.spectral)
    }
}

fn relative(diff: f64, reference: f64) -> f64 {
    if reference > 0.0 {
        diff / reference
    } else {
        diff
    }
}

/// Largest singular value, from the Hermitian eigenproblem of `M†M`.
fn spectral_norm(m: DMatrix<Complex64>) -> f64 {
    let gram = cmatmul(&m.adjoint(), &m);
    gram.symmetric_eigenvalues().max().max(0.0).sqrt()
}

pub fn compare(symbolic: &DiffOp, numeric: &GridOp, psi: &CoefFn) -> Result<Residual> {
    let grid = numeric.grid;
    let rows = grid.interior();
    let nrows = rows.len();

    let exact = sample(&symbolic.apply(psi)?, &grid)?;
    let approx = numeric.apply(&sample(psi, &grid)?);
    let cut = |v: &DVector<Complex64>| v.rows(rows.start, nrows).into_owned();
    let (exact, approx) = (cut(&exact), cut(&approx));
    let action = relative((&exact - &approx).norm(), exact.norm());

    let reference = discretize(symbolic, &grid)?.matrix;
    let basis = grid.band_basis();
    let modes = basis.ncols();
    let band = |m: &DMatrix<Complex64>| cmatmul(m, &basis).rows(rows.start, nrows).into_owned();
    let spectral = relative(
        spectral_norm(band(&(&reference - &numeric.matrix))),
        spectral_norm(band(&reference)),
    );

    Ok(Residual {
        action,
        spectral,
        rows: nrows,
        modes,
    })
}
