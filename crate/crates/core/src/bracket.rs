//! Generalized geometric commutator on differential operators.
//!
//! The structural function `s` always acts as the multiplication operator
//! `s·`, so `[s, B]` is the ordinary commutator `s∘B − B∘s`. With that reading
//!
//! ```text
//! G(s, A, B) = A∘[s, B] − B∘[s, A]
//! [A, B]_s   = [A, B] + G(s, A, B)
//! ```
//!
//! and every identity below is an exact statement about normal forms.

use crate::coeff::CoefFn;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

/// Both halves of a covariant bracket, kept apart for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    pub qpb_part: DiffOp,
    pub geomutator_part: DiffOp,
    pub total: DiffOp,
    pub s_used: CoefFn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformVariant {
    /// `a + s a`
    Plain,
    /// `a + s a − a s`
    Sg,
}

/// The three cyclic sums of the generalized Jacobi expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiResiduals {
    /// Ordinary Jacobi sum of nested commutators.
    pub cc: DiffOp,
    /// Nine geomutator cross terms.
    pub ll: DiffOp,
    /// Cyclic sum of nested covariant brackets.
    pub cl: DiffOp,
}

impl JacobiResiduals {
    /// `N_cl = N_cc + N_ll`.
    pub fn decomposition_holds(&self) -> bool {
        self.cl == &self.cc + &self.ll
    }
}

/// Covariant bracket of `f₊ + i f₋` with `g₊ + i g₋`, plus the same value
/// rebuilt from the four component brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSplit {
    pub report: BracketReport,
    /// `[f₊,g₊] − [f₋,g₋] + i([f₋,g₊] + [f₊,g₋])` of commutators.
    pub qpb_expansion: DiffOp,
    /// The same combination of geomutators.
    pub geomutator_expansion: DiffOp,
    /// The same combination of covariant brackets.
    pub total_expansion: DiffOp,
}

impl HermitianSplit {
    pub fn holds(&self) -> bool {
        self.report.qpb_part == self.qpb_expansion
            && self.report.geomutator_part == self.geomutator_expansion
            && self.report.total == self.total_expansion
    }
}

fn same_dim(ops: &[&DiffOp]) -> Result<usize> {
    let dim = ops[0].dim();
    for op in &ops[1..] {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: op.dim(),
            });
        }
    }
    Ok(dim)
}

fn structure_op(s: &CoefFn, dim: usize) -> Result<DiffOp> {
    if s.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: s.dim(),
        });
    }
    Ok(DiffOp::mult(s.clone()))
}

/// Rejects complex-valued structural functions.
pub fn check_real(s: &CoefFn) -> Result<()> {
    if !s.is_real() {
        return Err(Error::NonRealStructure(s.to_string()));
    }
    Ok(())
}

/// `G(s, A, B) = A∘[s·, B] − B∘[s·, A]`.
pub fn geomutator(s: &CoefFn, a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    let dim = same_dim(&[a, b])?;
    let sop = structure_op(s, dim)?;
    check_real(s)?;
    Ok(geomutator_unchecked(&sop, a, b))
}

fn geomutator_unchecked(sop: &DiffOp, a: &DiffOp, b: &DiffOp) -> DiffOp {
    let sb = &(sop * b) - &(b * sop);
    let sa = &(sop * a) - &(a * sop);
    &(a * &sb) - &(b * &sa)
}

/// `[A, B]_s = [A, B] + G(s, A, B)`.
pub fn qcpb(s: &CoefFn, a: &DiffOp, b: &DiffOp) -> Result<BracketReport> {
    let dim = same_dim(&[a, b])?;
    let sop = structure_op(s, dim)?;
    check_real(s)?;
    Ok(qcpb_unchecked(s, &sop, a, b))
}

fn qcpb_unchecked(s: &CoefFn, sop: &DiffOp, a: &DiffOp, b: &DiffOp) -> BracketReport {
    let qpb_part = &(a * b) - &(b * a);
    let geomutator_part = geomutator_unchecked(sop, a, b);
    let total = &qpb_part + &geomutator_part;
    BracketReport {
        qpb_part,
        geomutator_part,
        total,
        s_used: s.clone(),
    }
}

/// `⟨A : s : B⟩ = A∘s∘B − B∘s∘A`.
pub fn sandwich(s: &CoefFn, a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    let dim = same_dim(&[a, b])?;
    let sop = structure_op(s, dim)?;
    Ok(&(&(a * &sop) * b) - &(&(b * &sop) * a))
}

/// `A^(s) = A + s∘A` or `A^(sg) = A + s∘A − A∘s`.
pub fn s_transform(s: &CoefFn, a: &DiffOp, variant: TransformVariant) -> Result<DiffOp> {
    let sop = structure_op(s, a.dim())?;
    let plain = a + &(&sop * a);
    Ok(match variant {
        TransformVariant::Plain => plain,
        TransformVariant::Sg => &plain - &(a * &sop),
    })
}

/// `N_cc`, `N_ll` and `N_cl` for the triple `(A, B, C)`.
pub fn jacobi_residuals(s: &CoefFn, a: &DiffOp, b: &DiffOp, c: &DiffOp) -> Result<JacobiResiduals> {
    let dim = same_dim(&[a, b, c])?;
    let sop = structure_op(s, dim)?;
    check_real(s)?;
    let mut cc = DiffOp::zero(dim);
    let mut ll = DiffOp::zero(dim);
    let mut cl = DiffOp::zero(dim);
    for (f, g, h) in [(a, b, c), (b, c, a), (c, a, b)] {
        let inner = qcpb_unchecked(s, &sop, f, g);
        cc = &cc + &(&(&inner.qpb_part * h) - &(h * &inner.qpb_part));
        ll = &ll + &geomutator_unchecked(&sop, &inner.qpb_part, h);
        ll = &ll + &(&(&inner.geomutator_part * h) - &(h * &inner.geomutator_part));
        ll = &ll + &geomutator_unchecked(&sop, &inner.geomutator_part, h);
        cl = &cl + &qcpb_unchecked(s, &sop, &inner.total, h).total;
    }
    Ok(JacobiResiduals { cc, ll, cl })
}

/// Covariant bracket of `f = f₊ + i f₋`, `g = g₊ + i g₋` together with its
/// component-wise expansion.
pub fn hermitian_split_qcpb(
    s: &CoefFn,
    f_plus: &DiffOp,
    f_minus: &DiffOp,
    g_plus: &DiffOp,
    g_minus: &DiffOp,
) -> Result<HermitianSplit> {
    let dim = same_dim(&[f_plus, f_minus, g_plus, g_minus])?;
    let sop = structure_op(s, dim)?;
    check_real(s)?;
    let i = ComplexRational::i();
    let f = f_plus + &f_minus.scale(&i);
    let g = g_plus + &g_minus.scale(&i);
    let report = qcpb_unchecked(s, &sop, &f, &g);

    let pp = qcpb_unchecked(s, &sop, f_plus, g_plus);
    let mm = qcpb_unchecked(s, &sop, f_minus, g_minus);
    let mp = qcpb_unchecked(s, &sop, f_minus, g_plus);
    let pm = qcpb_unchecked(s, &sop, f_plus, g_minus);
    let combine = |part: fn(&BracketReport) -> &DiffOp| {
        &(part(&pp) - part(&mm)) + &(part(&mp) + part(&pm)).scale(&i)
    };
    Ok(HermitianSplit {
        qpb_expansion: combine(|r| &r.qpb_part),
        geomutator_expansion: combine(|r| &r.geomutator_part),
        total_expansion: combine(|r| &r.total),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::MultiIndex;

    fn x() -> CoefFn {
        CoefFn::coord(1, 0).unwrap()
    }

    fn e(k: i64) -> CoefFn {
        CoefFn::exp_linear(vec![ComplexRational::imag(crate::scalar::rational(k, 1))])
    }

    fn d() -> DiffOp {
        DiffOp::partial(1, 0).unwrap()
    }

    fn structures() -> Vec<CoefFn> {
        vec![
            CoefFn::zero(1),
            x(),
            &x() * &x(),
            CoefFn::cos(1, 0, 1).unwrap(),
        ]
    }

    #[test]
    fn exponential_pair_bracket() {
        let i = ComplexRational::i();
        let f = DiffOp::from_term(MultiIndex(vec![1]), e(1).scale(&-&i));
        let g = DiffOp::mult(e(1));
        for s in structures() {
            let r = qcpb(&s, &f, &g).unwrap();
            assert_eq!(r.qpb_part, DiffOp::mult(e(2)));
            let expected = &e(2) * &(&CoefFn::one(1) - &s.diff(0).unwrap().scale(&i));
            assert_eq!(r.total, DiffOp::mult(expected), "s = {s}");
            assert_eq!(r.total, &r.qpb_part + &r.geomutator_part);
        }
    }

    #[test]
    fn derivative_position_bracket() {
        let sin = CoefFn::sin(1, 0, 1).unwrap();
        for s in structures() {
            let r = qcpb(&s, &d(), &DiffOp::mult(x())).unwrap();
            let factor = &CoefFn::one(1) + &(&x() * &s.diff(0).unwrap());
            assert_eq!(r.total, DiffOp::mult(factor.clone()));
            assert_eq!(r.total.apply(&sin).unwrap(), &factor * &sin);
        }
    }

    #[test]
    fn special_geomutator_values() {
        let s = &x() * &x();
        let sop = DiffOp::mult(s.clone());
        let b = &d() * &d();
        assert!(geomutator(&s, &b, &b).unwrap().is_zero());
        assert!(geomutator(&s, &sop, &sop).unwrap().is_zero());
        let expected = &sop * &sop.qpb(&b).unwrap();
        assert_eq!(geomutator(&s, &sop, &b).unwrap(), expected);
        let expected = &sop * &b.qpb(&sop).unwrap();
        assert_eq!(geomutator(&s, &b, &sop).unwrap(), expected);
    }

    #[test]
    fn constant_structure_degenerates() {
        let s = CoefFn::constant(1, 5.into());
        let a = &DiffOp::mult(x()) * &d();
        let b = DiffOp::mult(e(1));
        let r = qcpb(&s, &a, &b).unwrap();
        assert!(r.geomutator_part.is_zero());
        assert_eq!(r.total, a.qpb(&b).unwrap());
    }

    #[test]
    fn sandwich_reductions() {
        let a = d();
        let b = DiffOp::mult(&x() * &x());
        assert!(sandwich(&x(), &a, &a).unwrap().is_zero());
        assert_eq!(
            sandwich(&CoefFn::one(1), &a, &b).unwrap(),
            a.qpb(&b).unwrap()
        );
    }

    #[test]
    fn transform_with_zero_structure_is_identity() {
        let a = &d() * &DiffOp::mult(e(1));
        assert_eq!(
            s_transform(&CoefFn::zero(1), &a, TransformVariant::Plain).unwrap(),
            a
        );
        assert_eq!(
            s_transform(&CoefFn::zero(1), &a, TransformVariant::Sg).unwrap(),
            a
        );
    }

    #[test]
    fn jacobi_with_zero_structure() {
        let a = DiffOp::mult(x());
        let b = &d() * &d();
        let c = DiffOp::mult(e(1));
        let r = jacobi_residuals(&CoefFn::zero(1), &a, &b, &c).unwrap();
        assert!(r.cc.is_zero() && r.ll.is_zero() && r.cl.is_zero());
    }

    #[test]
    fn jacobi_position_derivative_structure() {
        let s = &x() * &x();
        let r = jacobi_residuals(&s, &DiffOp::mult(x()), &d(), &DiffOp::mult(s.clone())).unwrap();
        assert!(r.cl.is_zero());
        assert!(r.decomposition_holds());
    }

    #[test]
    fn generalized_jacobi_residual_nonzero_for_generic_triple() {
        // Fixed counterexample: the cyclic sum of covariant brackets does not
        // vanish for (∂, ∂², e^{ix}) with s = x².
        let s = &x() * &x();
        let r = jacobi_residuals(&s, &d(), &(&d() * &d()), &DiffOp::mult(e(1))).unwrap();
        assert!(r.cc.is_zero());
        assert!(r.decomposition_holds());
        let x2 = &x() * &x();
        let poly = &(&x2.scale(&ComplexRational::from_parts((0, 1), (8, 1)))
            - &x().scale(&2.into()))
            + &CoefFn::constant(1, ComplexRational::from_parts((0, 1), (2, 1)));
        assert_eq!(r.cl, DiffOp::mult(&e(1) * &poly));
    }

    #[test]
    fn hermitian_split_reduces_without_imaginary_parts() {
        let s = CoefFn::cos(1, 0, 1).unwrap();
        let zero = DiffOp::zero(1);
        let fp = &d() * &d();
        let gp = DiffOp::mult(&x() * &x());
        let split = hermitian_split_qcpb(&s, &fp, &zero, &gp, &zero).unwrap();
        assert_eq!(split.report, qcpb(&s, &fp, &gp).unwrap());
        assert!(split.holds());
    }

    #[test]
    fn rejects_complex_structure() {
        assert!(matches!(
            qcpb(&e(1), &d(), &d()),
            Err(Error::NonRealStructure(_))
        ));
        assert!(geomutator(&e(1), &d(), &d()).is_err());
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let two = DiffOp::identity(2);
        assert!(matches!(
            qcpb(&x(), &d(), &two),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(qcpb(&CoefFn::zero(2), &d(), &d()).is_err());
        assert!(sandwich(&x(), &d(), &two).is_err());
    }
}
