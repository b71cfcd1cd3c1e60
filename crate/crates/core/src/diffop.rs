//! Linear differential operators in normal order, `Σ_α c_α(x) ∂^α`.
//!
//! Coefficients always sit left of derivatives. Composition moves derivatives
//! through coefficients with the multi-index Leibniz rule
//! `∂^α ∘ c = Σ_{γ≤α} C(α,γ) (∂^γ c) ∂^{α−γ}`, so `order(A∘B) ≤ order(A) +
//! order(B)` and the number of terms can grow quickly with nesting depth.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{default_name, write_term, CoefFn};
use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

/// Derivative multi-index `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, j: usize) -> Self {
        let mut a = vec![0; dim];
        a[j] = 1;
        MultiIndex(a)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every `γ ≤ α` together with `C(α, γ)`.
    fn sub_indices(&self) -> Vec<(MultiIndex, u64)> {
        let mut out = vec![(Vec::with_capacity(self.0.len()), 1u64)];
        for &a in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for (prefix, weight) in &out {
                for g in 0..=a {
                    let mut p = prefix.clone();
                    p.push(g);
                    next.push((p, weight * binomial(a, g)));
                }
            }
            out = next;
        }
        out.into_iter().map(|(g, w)| (MultiIndex(g), w)).collect()
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOp {
    dim: usize,
    terms: BTreeMap<MultiIndex, CoefFn>,
}

impl DiffOp {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "operators need at least one coordinate");
        DiffOp {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        DiffOp::mult(CoefFn::one(dim))
    }

    /// Multiplication by `f`.
    pub fn mult(f: CoefFn) -> Self {
        let mut op = DiffOp::zero(f.dim());
        op.insert(MultiIndex::zero(f.dim()), f);
        op
    }

    pub fn scalar(dim: usize, c: ComplexRational) -> Self {
        DiffOp::mult(CoefFn::constant(dim, c))
    }

    /// `∂/∂x_j` (0-based `j`).
    pub fn partial(dim: usize, j: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        Ok(DiffOp::from_term(
            MultiIndex::unit(dim, j),
            CoefFn::one(dim),
        ))
    }

    /// Multiplication by the coordinate `x_j`.
    pub fn position(dim: usize, j: usize) -> Result<Self> {
        Ok(DiffOp::mult(CoefFn::coord(dim, j)?))
    }

    /// `c(x) ∂^α`.
    pub fn from_term(alpha: MultiIndex, c: CoefFn) -> Self {
        assert_eq!(
            alpha.0.len(),
            c.dim(),
            "multi-index and coefficient disagree on dimension"
        );
        let mut op = DiffOp::zero(c.dim());
        op.insert(alpha, c);
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &CoefFn)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> CoefFn {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| CoefFn::zero(self.dim))
    }

    /// The function `f` when the operator is multiplication by `f`.
    pub fn as_multiplication(&self) -> Option<CoefFn> {
        match self.terms.len() {
            0 => Some(CoefFn::zero(self.dim)),
            1 => self.terms.get(&MultiIndex::zero(self.dim)).cloned(),
            _ => None,
        }
    }

    fn insert(&mut self, alpha: MultiIndex, c: CoefFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_dim(other.dim)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_dim(other.dim)?;
        Ok(self - other)
    }

    pub fn scale(&self, c: &ComplexRational) -> DiffOp {
        let mut out = DiffOp::zero(self.dim);
        for (alpha, coef) in &self.terms {
            out.insert(alpha.clone(), coef.scale(c));
        }
        out
    }

    /// Left multiplication by a function, `f · A`.
    pub fn left_mult(&self, f: &CoefFn) -> Result<DiffOp> {
        self.check_dim(f.dim())?;
        let mut out = DiffOp::zero(self.dim);
        for (alpha, coef) in &self.terms {
            out.insert(alpha.clone(), f * coef);
        }
        Ok(out)
    }

    /// Operator product `A ∘ B` in normal order.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_dim(other.dim)?;
        Ok(self * other)
    }

    fn compose_unchecked(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(self.dim);
        for (alpha, c) in &self.terms {
            let splits = alpha.sub_indices();
            for (beta, d) in &other.terms {
                for (gamma, weight) in &splits {
                    let dd = d
                        .diff_multi(&gamma.0)
                        .expect("multi-index matches dimension");
                    if dd.is_zero() {
                        continue;
                    }
                    let rest =
                        MultiIndex(alpha.0.iter().zip(&gamma.0).map(|(a, g)| a - g).collect());
                    let coef = (c * &dd).scale(&ComplexRational::from(*weight as i64));
                    out.insert(rest.add(beta), coef);
                }
            }
        }
        out
    }

    /// `Σ_α c_α ∂^α ψ`.
    pub fn apply(&self, psi: &CoefFn) -> Result<CoefFn> {
        self.check_dim(psi.dim())?;
        let mut out = CoefFn::zero(self.dim);
        for (alpha, c) in &self.terms {
            out = &out + &(c * &psi.diff_multi(&alpha.0)?);
        }
        Ok(out)
    }

    /// `[A, B] = A∘B − B∘A`.
    pub fn qpb(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_dim(other.dim)?;
        Ok(&(self * other) - &(other * self))
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        let mut acc = DiffOp::identity(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (alpha, c) in &rhs.terms {
            out.insert(alpha.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (alpha, c) in &rhs.terms {
            out.insert(alpha.clone(), -c);
        }
        out
    }
}

/// Composition.
impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        self.compose_unchecked(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&ComplexRational::from_int(-1))
    }
}

fn sign(f: &mut fmt::Formatter<'_>, neg: bool, first: &mut bool) -> fmt::Result {
    match (*first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    *first = false;
    Ok(())
}

fn write_derivs(f: &mut fmt::Formatter<'_>, alpha: &MultiIndex, mut sep: &str) -> fmt::Result {
    for (j, &a) in alpha.0.iter().enumerate() {
        match a {
            0 => continue,
            1 => write!(f, "{sep}d{}", j + 1)?,
            _ => write!(f, "{sep}d{}^{a}", j + 1)?,
        }
        sep = "*";
    }
    Ok(())
}

/// E.g. `(1 + 2*x1^2)*d1^2 + i*d2`; the output parses back to the same operator.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, coef) in &self.terms {
            if alpha.is_zero() || coef.len() == 1 {
                for (key, c) in coef.terms() {
                    let neg = c.prints_negative();
                    sign(f, neg, &mut first)?;
                    let shown = if neg { -c } else { c.clone() };
                    if alpha.is_zero() {
                        write_term(f, key, &shown, &default_name)?;
                    } else if key.degree() == 0 && !key.has_exp() && shown.is_one() {
                        write_derivs(f, alpha, "")?;
                    } else {
                        write_term(f, key, &shown, &default_name)?;
                        write_derivs(f, alpha, "*")?;
                    }
                }
            } else {
                sign(f, false, &mut first)?;
                write!(f, "({coef})")?;
                write_derivs(f, alpha, "*")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> DiffOp {
        DiffOp::position(1, 0).unwrap()
    }

    fn d() -> DiffOp {
        DiffOp::partial(1, 0).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(MultiIndex(vec![2, 1]).sub_indices().len(), 6);
    }

    #[test]
    fn one_step_leibniz() {
        assert_eq!(&d() * &x(), &DiffOp::identity(1) + &(&x() * &d()));
    }

    #[test]
    fn leibniz_with_function() {
        let s = CoefFn::cos(1, 0, 2).unwrap();
        let lhs = &d() * &DiffOp::mult(s.clone());
        let rhs = &DiffOp::mult(s.diff(0).unwrap()) + &DiffOp::from_term(MultiIndex(vec![1]), s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn momentum_squared() {
        let p = d().scale(&-ComplexRational::i());
        let expected = DiffOp::from_term(MultiIndex(vec![2]), CoefFn::constant(1, (-1).into()));
        assert_eq!(&p * &p, expected);
    }

    #[test]
    fn canonical_pair_and_self_commutator() {
        assert_eq!(d().qpb(&x()).unwrap(), DiffOp::identity(1));
        assert!(d().qpb(&d()).unwrap().is_zero());
    }

    #[test]
    fn apply_examples() {
        let sin = CoefFn::sin(1, 0, 1).unwrap();
        let commutator = d().qpb(&x()).unwrap();
        assert_eq!(commutator.apply(&sin).unwrap(), sin);
        assert_eq!(DiffOp::identity(1).apply(&sin).unwrap(), sin);
        let e = CoefFn::exp_linear(vec![ComplexRational::i()]);
        let p = d().scale(&-ComplexRational::i());
        assert_eq!(p.apply(&e).unwrap(), e);
    }

    #[test]
    fn linear_ops() {
        let a = &x() * &d();
        assert_eq!(&a + &DiffOp::zero(1), a);
        assert!((&a - &a).is_zero());
        let id = d().scale(&ComplexRational::i());
        assert_eq!(id.to_string(), "i*d1");
    }

    #[test]
    fn mismatched_dimensions() {
        let a = DiffOp::identity(1);
        let b = DiffOp::identity(2);
        assert!(a.compose(&b).is_err());
        assert!(a.qpb(&b).is_err());
        assert!(a.apply(&CoefFn::one(2)).is_err());
        assert!(DiffOp::partial(2, 2).is_err());
    }

    #[test]
    fn printing() {
        let x2 = CoefFn::coord(2, 0).unwrap();
        let c = &CoefFn::one(2) + &(&x2 * &x2).scale(&2.into());
        let op = &DiffOp::from_term(MultiIndex(vec![2, 0]), c)
            + &DiffOp::from_term(
                MultiIndex(vec![0, 1]),
                CoefFn::constant(2, ComplexRational::i()),
            );
        assert_eq!(op.to_string(), "i*d2 + (1 + 2*x1^2)*d1^2");
        assert_eq!((&(-&x()) * &d()).to_string(), "-x1*d1");
        assert_eq!((&d() * &x()).to_string(), "1 + x1*d1");
    }
}
