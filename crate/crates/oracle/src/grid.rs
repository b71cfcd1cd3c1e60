use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{OracleError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Trigonometric interpolation; exact on resolved Fourier modes.
    Spectral,
    /// Second-order centred differences with periodic wrap.
    Central2,
}

/// Uniform periodic grid on `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    n: usize,
    pub scheme: Scheme,
    /// Accept non-periodic coefficients and compare away from the seam.
    pub windowed: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n: 256,
            scheme: Scheme::Spectral,
            windowed: false,
        }
    }
}

impl GridSpec {
    pub fn new(n: usize, scheme: Scheme) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(OracleError::BadGrid(n));
        }
        Ok(GridSpec {
            n,
            scheme,
            windowed: false,
        })
    }

    pub fn windowed(mut self, on: bool) -> Self {
        self.windowed = on;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n).map(|k| k as f64 * h).collect()
    }

    /// True when coefficients must be periodic for this grid.
    pub fn requires_periodic(&self) -> bool {
        self.scheme == Scheme::Spectral && !self.windowed
    }

    /// Rows used in comparisons: all of them for periodic spectral grids,
    /// otherwise `N/8` points are dropped at each end.
    pub fn interior(&self) -> std::ops::Range<usize> {
        if self.requires_periodic() {
            0..self.n
        } else {
            let band = self.n / 8;
            band..self.n - band
        }
    }

    /// First-derivative matrix.
    pub fn derivative(&self) -> DMatrix<Complex64> {
        let n = self.n;
        let h = self.spacing();
        match self.scheme {
            Scheme::Spectral => DMatrix::from_fn(n, n, |j, k| {
                if j == k {
                    return Complex64::new(0.0, 0.0);
                }
                let d = j as f64 - k as f64;
                let sign = if (j + n - k).is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                Complex64::new(0.5 * sign / (0.5 * d * h).tan(), 0.0)
            }),
            Scheme::Central2 => {
                let c = 1.0 / (2.0 * h);
                DMatrix::from_fn(n, n, |j, k| {
                    if k == (j + 1) % n {
                        Complex64::new(c, 0.0)
                    } else if k == (j + n - 1) % n {
                        Complex64::new(-c, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
        }
    }

    /// Second-derivative matrix. The spectral version differentiates the
    /// Nyquist mode as `-(N/2)²` instead of squaring the first-derivative
    /// matrix, which sends it to zero.
    pub fn second_derivative(&self) -> DMatrix<Complex64> {
        let n = self.n;
        let h = self.spacing();
        match self.scheme {
            Scheme::Spectral => DMatrix::from_fn(n, n, |j, k| {
                if j == k {
                    return Complex64::new(-PI * PI / (3.0 * h * h) - 1.0 / 6.0, 0.0);
                }
                let d = j as f64 - k as f64;
                let sign = if (j + n - k).is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                let sin = (0.5 * d * h).sin();
                Complex64::new(-0.5 * sign / (sin * sin), 0.0)
            }),
            Scheme::Central2 => {
                let d = self.derivative();
                &d * &d
            }
        }
    }

    /// `D^k` with even powers built from the second-derivative matrix.
    pub fn derivative_power(&self, k: usize) -> DMatrix<Complex64> {
        let n = self.n;
        let mut out = DMatrix::<Complex64>::identity(n, n);
        if k >= 2 {
            let d2 = self.second_derivative();
            for _ in 0..k / 2 {
                out = crate::ops::cmatmul(&d2, &out);
            }
        }
        if k % 2 == 1 {
            out = crate::ops::cmatmul(&self.derivative(), &out);
        }
        out
    }

    /// Orthonormal Fourier modes `e^{ikx}/√N` for `|k| ≤ N/4`, as columns.
    pub fn band_basis(&self) -> DMatrix<Complex64> {
        let quarter = (self.n / 4) as i64;
        let norm = 1.0 / (self.n as f64).sqrt();
        let xs = self.points();
        DMatrix::from_fn(self.n, (2 * quarter + 1) as usize, |j, c| {
            let k = c as i64 - quarter;
            Complex64::from_polar(norm, k as f64 * xs[j])
        })
    }

    pub fn zeros(&self) -> DVector<Complex64> {
        DVector::zeros(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(8, Scheme::Spectral).is_err());
        assert!(GridSpec::new(48, Scheme::Spectral).is_err());
        assert!(GridSpec::new(64, Scheme::Central2).is_ok());
    }

    #[test]
    fn spectral_derivative_is_antisymmetric() {
        let g = GridSpec::new(32, Scheme::Spectral).unwrap();
        let d = g.derivative();
        assert!((&d + d.adjoint()).norm() < 1e-12);
    }

    #[test]
    fn spectral_derivative_of_resolved_mode() {
        let g = GridSpec::default();
        let xs = g.points();
        let d = g.derivative();
        for k in [1i32, 5, 40] {
            let f = DVector::from_iterator(
                g.n(),
                xs.iter().map(|&x| Complex64::from_polar(1.0, k as f64 * x)),
            );
            let err = (&d * &f - f.map(|v| v * Complex64::new(0.0, k as f64))).camax();
            assert!(err < 1e-10, "k = {k}: {err}");
        }
    }

    #[test]
    fn central_difference_is_second_order() {
        let err = |n: usize| {
            let g = GridSpec::new(n, Scheme::Central2).unwrap();
            let xs = g.points();
            let f = DVector::from_iterator(n, xs.iter().map(|&x| Complex64::new(x.sin(), 0.0)));
            let exact = DVector::from_iterator(n, xs.iter().map(|&x| Complex64::new(x.cos(), 0.0)));
            (g.derivative() * f - exact).camax()
        };
        let ratio = err(64) / err(128);
        assert!((3.8..4.2).contains(&ratio), "{ratio}");
    }

    #[test]
    fn second_derivative_of_resolved_and_nyquist_modes() {
        let g = GridSpec::new(64, Scheme::Spectral).unwrap();
        let xs = g.points();
        let d2 = g.second_derivative();
        for k in [1i32, 7, 32] {
            let f = DVector::from_iterator(
                64,
                xs.iter()
                    .map(|&x| Complex64::new((k as f64 * x).cos(), 0.0)),
            );
            let err = (&d2 * &f + f.map(|v| v * (k * k) as f64)).camax();
            assert!(err < 1e-9 * (k * k) as f64, "k = {k}: {err}");
        }
        let d = g.derivative();
        let band = g.band_basis();
        assert!(((&d * &d - &d2) * band).camax() < 1e-9);
    }

    #[test]
    fn band_basis_is_orthonormal() {
        let g = GridSpec::new(32, Scheme::Spectral).unwrap();
        let p = g.band_basis();
        let gram = p.adjoint() * &p;
        assert!((gram - DMatrix::identity(17, 17)).norm() < 1e-12);
    }
}
