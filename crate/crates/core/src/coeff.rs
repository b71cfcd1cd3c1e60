//! Coefficient functions: finite sums of `c · x^ν · exp(κ·x)`.
//!
//! The family is closed under addition, multiplication and partial
//! differentiation, and distinct `(ν, κ)` keys are linearly independent, so a
//! map with no zero entries is a canonical form and equality is structural.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

/// Monomial powers `ν` and exponential frequencies `κ` of one term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermKey {
    pub powers: Vec<u32>,
    pub freq: Vec<ComplexRational>,
}

impl TermKey {
    pub fn constant(dim: usize) -> Self {
        TermKey {
            powers: vec![0; dim],
            freq: vec![ComplexRational::zero(); dim],
        }
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().sum()
    }

    pub fn has_exp(&self) -> bool {
        self.freq.iter().any(|k| !k.is_zero())
    }

    fn conj(&self) -> Self {
        TermKey {
            powers: self.powers.clone(),
            freq: self.freq.iter().map(|k| k.conj()).collect(),
        }
    }
}

// Graded order on the monomial first so printed sums read `1 + x1 + x1^2`.
impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.powers.cmp(&self.powers))
            .then_with(|| self.has_exp().cmp(&other.has_exp()))
            .then_with(|| self.freq.cmp(&other.freq))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefFn {
    dim: usize,
    terms: BTreeMap<TermKey, ComplexRational>,
}

impl CoefFn {
    pub fn zero(dim: usize) -> Self {
        assert!(
            dim >= 1,
            "coefficient functions need at least one coordinate"
        );
        CoefFn {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: ComplexRational) -> Self {
        let mut f = CoefFn::zero(dim);
        f.insert(TermKey::constant(dim), c);
        f
    }

    pub fn one(dim: usize) -> Self {
        CoefFn::constant(dim, ComplexRational::one())
    }

    /// The coordinate function `x_j` (0-based `j`).
    pub fn coord(dim: usize, j: usize) -> Result<Self> {
        check_index(j, dim)?;
        let mut key = TermKey::constant(dim);
        key.powers[j] = 1;
        let mut f = CoefFn::zero(dim);
        f.insert(key, ComplexRational::one());
        Ok(f)
    }

    /// `exp(κ·x)`.
    pub fn exp_linear(freq: Vec<ComplexRational>) -> Self {
        let dim = freq.len();
        let mut f = CoefFn::zero(dim);
        f.insert(
            TermKey {
                powers: vec![0; dim],
                freq,
            },
            ComplexRational::one(),
        );
        f
    }

    /// A single term `c · x^ν · exp(κ·x)`.
    pub fn term(coef: ComplexRational, powers: Vec<u32>, freq: Vec<ComplexRational>) -> Self {
        assert_eq!(
            powers.len(),
            freq.len(),
            "term key parts disagree on dimension"
        );
        let mut f = CoefFn::zero(powers.len());
        f.insert(TermKey { powers, freq }, coef);
        f
    }

    /// `sin(k·x_j)` for integer `k`, as `(e^{ikx} - e^{-ikx}) / 2i`.
    pub fn sin(dim: usize, j: usize, k: i64) -> Result<Self> {
        let (plus, minus) = Self::trig_pair(dim, j, k)?;
        let half_i = ComplexRational::from_parts((0, 1), (1, 2));
        Ok(&(&minus - &plus) * &half_i)
    }

    /// `cos(k·x_j)` for integer `k`.
    pub fn cos(dim: usize, j: usize, k: i64) -> Result<Self> {
        let (plus, minus) = Self::trig_pair(dim, j, k)?;
        let half = ComplexRational::from_parts((1, 2), (0, 1));
        Ok(&(&plus + &minus) * &half)
    }

    fn trig_pair(dim: usize, j: usize, k: i64) -> Result<(Self, Self)> {
        check_index(j, dim)?;
        let mut freq = vec![ComplexRational::zero(); dim];
        freq[j] = ComplexRational::imag(crate::scalar::rational(k, 1));
        let plus = CoefFn::exp_linear(freq.clone());
        freq[j] = -&freq[j];
        Ok((plus, CoefFn::exp_linear(freq)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &ComplexRational)> {
        self.terms.iter()
    }

    /// The constant value, if the function has no non-constant terms.
    pub fn as_constant(&self) -> Option<ComplexRational> {
        match self.terms.len() {
            0 => Some(ComplexRational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                (k.degree() == 0 && !k.has_exp()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|k| !k.has_exp())
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(TermKey::degree).max().unwrap_or(0)
    }

    /// Pointwise complex conjugate for real coordinates.
    pub fn conj(&self) -> Self {
        let mut out = CoefFn::zero(self.dim);
        for (k, c) in &self.terms {
            out.insert(k.conj(), c.conj());
        }
        out
    }

    /// Real-valued on real coordinates.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    fn insert(&mut self, key: TermKey, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &CoefFn) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CoefFn) -> Result<CoefFn> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &CoefFn) -> Result<CoefFn> {
        self.check_dim(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &CoefFn) -> Result<CoefFn> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &ComplexRational) -> CoefFn {
        if c.is_zero() {
            return CoefFn::zero(self.dim);
        }
        CoefFn {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Exact `∂f/∂x_j` (0-based `j`).
    pub fn diff(&self, j: usize) -> Result<CoefFn> {
        check_index(j, self.dim)?;
        let mut out = CoefFn::zero(self.dim);
        for (key, c) in &self.terms {
            let p = key.powers[j];
            if p > 0 {
                let mut lowered = key.clone();
                lowered.powers[j] = p - 1;
                out.insert(lowered, c * &ComplexRational::from(p as i64));
            }
            if !key.freq[j].is_zero() {
                out.insert(key.clone(), c * &key.freq[j]);
            }
        }
        Ok(out)
    }

    /// Applies `∂^α` for a full multi-index.
    pub fn diff_multi(&self, alpha: &[u32]) -> Result<CoefFn> {
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: alpha.len(),
            });
        }
        let mut out = self.clone();
        for (j, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                if out.is_zero() {
                    return Ok(out);
                }
                out = out.diff(j)?;
            }
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<CoefFn> {
        (0..self.dim)
            .map(|j| self.diff(j).expect("index within dim"))
            .collect()
    }

    /// Numerical value at a real point.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        assert_eq!(
            x.len(),
            self.dim,
            "evaluation point has the wrong dimension"
        );
        let mut acc = Complex64::zero();
        for (key, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut v = Complex64::new(re, im);
            let mut arg = Complex64::zero();
            for j in 0..self.dim {
                if key.powers[j] > 0 {
                    v *= x[j].powi(key.powers[j] as i32);
                }
                let (kr, ki) = key.freq[j].to_f64_pair();
                arg += Complex64::new(kr, ki) * x[j];
            }
            acc += v * arg.exp();
        }
        acc
    }
}

fn check_index(j: usize, dim: usize) -> Result<()> {
    if j >= dim {
        return Err(Error::IndexOutOfRange { index: j, dim });
    }
    Ok(())
}

impl<'a> Add<&'a CoefFn> for &'a CoefFn {
    type Output = CoefFn;
    fn add(self, rhs: &CoefFn) -> CoefFn {
        assert_eq!(self.dim, rhs.dim, "coefficient dimension mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CoefFn> for &'a CoefFn {
    type Output = CoefFn;
    fn sub(self, rhs: &CoefFn) -> CoefFn {
        assert_eq!(self.dim, rhs.dim, "coefficient dimension mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CoefFn> for &'a CoefFn {
    type Output = CoefFn;
    fn mul(self, rhs: &CoefFn) -> CoefFn {
        assert_eq!(self.dim, rhs.dim, "coefficient dimension mismatch");
        let mut out = CoefFn::zero(self.dim);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key = TermKey {
                    powers: ka
                        .powers
                        .iter()
                        .zip(&kb.powers)
                        .map(|(a, b)| a + b)
                        .collect(),
                    freq: ka.freq.iter().zip(&kb.freq).map(|(a, b)| a + b).collect(),
                };
                out.insert(key, ca * cb);
            }
        }
        out
    }
}

impl Mul<&ComplexRational> for &CoefFn {
    type Output = CoefFn;
    fn mul(self, rhs: &ComplexRational) -> CoefFn {
        self.scale(rhs)
    }
}

impl Neg for &CoefFn {
    type Output = CoefFn;
    fn neg(self) -> CoefFn {
        self.scale(&ComplexRational::from_int(-1))
    }
}

pub(crate) type Names<'a> = &'a dyn Fn(usize) -> String;

pub(crate) fn default_name(j: usize) -> String {
    format!("x{}", j + 1)
}

/// Writes the linear form `κ·x` inside `exp(...)`.
fn write_linear(
    f: &mut fmt::Formatter<'_>,
    freq: &[ComplexRational],
    names: Names<'_>,
) -> fmt::Result {
    let mut first = true;
    for (j, k) in freq.iter().enumerate() {
        if k.is_zero() {
            continue;
        }
        let (neg, mag) = if k.prints_negative() {
            (true, -k)
        } else {
            (false, k.clone())
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "{}", names(j))?;
        first = false;
    }
    Ok(())
}

/// Writes one term with a non-negative-looking coefficient; the caller owns
/// the sign.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    key: &TermKey,
    coef: &ComplexRational,
    names: Names<'_>,
) -> fmt::Result {
    let has_factors = key.degree() > 0 || key.has_exp();
    if !has_factors {
        return write!(f, "{coef}");
    }
    let mut sep = "";
    if !coef.is_one() {
        write!(f, "{coef}")?;
        sep = "*";
    }
    for (j, &p) in key.powers.iter().enumerate() {
        match p {
            0 => continue,
            1 => write!(f, "{sep}{}", names(j))?,
            _ => write!(f, "{sep}{}^{p}", names(j))?,
        }
        sep = "*";
    }
    if key.has_exp() {
        write!(f, "{sep}exp(")?;
        write_linear(f, &key.freq, names)?;
        write!(f, ")")?;
    }
    Ok(())
}

/// Signed sum of terms, e.g. `1 + 2*x1^2 - i*exp(i*x1)`.
impl fmt::Display for CoefFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &default_name)
    }
}

impl CoefFn {
    /// Like `Display`, with coordinate `j` printed as `names(j)`.
    pub(crate) fn write_with(&self, f: &mut fmt::Formatter<'_>, names: Names<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, coef)) in self.terms.iter().enumerate() {
            let neg = coef.prints_negative();
            let shown = if neg { -coef } else { coef.clone() };
            match (n == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write_term(f, key, &shown, names)?;
        }
        Ok(())
    }
}
