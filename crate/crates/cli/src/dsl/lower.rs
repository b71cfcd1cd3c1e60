use ggc_core::quantum::{classical_momentum, geomentum};
use ggc_core::scalar::rational;
use ggc_core::{CoefFn, ComplexRational, DiffOp, Hamiltonian, Params, PhaseFn};

use super::ast::{Expr, ExprKind, Preset};
use super::LowerError;

/// Everything a quantum expression may refer to besides its own literals.
#[derive(Clone, Debug)]
pub struct Context {
    pub dim: usize,
    /// `None` while lowering `s` itself.
    pub s: Option<CoefFn>,
    pub params: Params,
}

fn domain(e: &Expr, msg: impl Into<String>) -> LowerError {
    LowerError::Domain {
        pos: e.pos,
        msg: msg.into(),
    }
}

fn check_index(e: &Expr, j: usize, dim: usize) -> Result<(), LowerError> {
    if j >= dim {
        return Err(domain(
            e,
            format!("index {} exceeds dimension {dim}", j + 1),
        ));
    }
    Ok(())
}

pub fn lower_quantum(e: &Expr, ctx: &Context) -> Result<DiffOp, LowerError> {
    let dim = ctx.dim;
    let need_s = || {
        ctx.s
            .as_ref()
            .ok_or_else(|| domain(e, "`s` cannot refer to itself"))
    };
    Ok(match &e.kind {
        ExprKind::Scalar(c) => DiffOp::scalar(dim, c.clone()),
        ExprKind::Coord(j) => {
            check_index(e, *j, dim)?;
            DiffOp::position(dim, *j)?
        }
        ExprKind::Deriv(j) => {
            check_index(e, *j, dim)?;
            DiffOp::partial(dim, *j)?
        }
        ExprKind::Preset(Preset::Structure) => DiffOp::mult(need_s()?.clone()),
        ExprKind::Preset(Preset::Hamiltonian) => {
            if dim != 1 {
                return Err(domain(
                    e,
                    format!("the oscillator `H` is one-dimensional, dimension is {dim}"),
                ));
            }
            Hamiltonian::harmonic_oscillator(ctx.params.clone()).op
        }
        ExprKind::Preset(Preset::Momentum(j)) => {
            check_index(e, *j, dim)?;
            geomentum(*j, need_s()?, &ctx.params)?
        }
        ExprKind::Preset(Preset::PlainMomentum(j)) => {
            check_index(e, *j, dim)?;
            classical_momentum(dim, *j, &ctx.params)?
        }
        ExprKind::Exp(arg) => DiffOp::mult(CoefFn::exp_linear(linear_part(
            arg,
            &lower_quantum(arg, ctx)?,
        )?)),
        ExprKind::Neg(a) => lower_quantum(a, ctx)?.scale(&ComplexRational::from_int(-1)),
        ExprKind::Add(a, b) => lower_quantum(a, ctx)?.try_add(&lower_quantum(b, ctx)?)?,
        ExprKind::Sub(a, b) => lower_quantum(a, ctx)?.try_sub(&lower_quantum(b, ctx)?)?,
        ExprKind::Mul(a, b) => lower_quantum(a, ctx)?.compose(&lower_quantum(b, ctx)?)?,
        ExprKind::Pow(a, n) => lower_quantum(a, ctx)?.pow(*n),
    })
}

/// Frequencies `κ` of an exponent `κ·x`.
fn linear_part(arg: &Expr, op: &DiffOp) -> Result<Vec<ComplexRational>, LowerError> {
    let bad = || {
        domain(
            arg,
            "the argument of `exp` must be linear in the coordinates with no constant term",
        )
    };
    let f = op.as_multiplication().ok_or_else(bad)?;
    let mut freq = vec![ComplexRational::zero(); f.dim()];
    for (key, c) in f.terms() {
        if key.has_exp() || key.degree() != 1 {
            return Err(bad());
        }
        let j = key.powers.iter().position(|&p| p == 1).expect("degree one");
        freq[j] = c.clone();
    }
    Ok(freq)
}

/// Lowers a phase-space polynomial in `x1..xn, p1..pn`.
pub fn lower_classical(e: &Expr, n: usize, s: Option<&PhaseFn>) -> Result<PhaseFn, LowerError> {
    let unavailable = |what: &str| {
        domain(
            e,
            format!("{what} is not available for phase-space functions"),
        )
    };
    Ok(match &e.kind {
        ExprKind::Scalar(c) => PhaseFn::new(CoefFn::constant(2 * n, c.clone()))?,
        ExprKind::Coord(j) => {
            check_index(e, *j, n)?;
            PhaseFn::position(n, *j)?
        }
        ExprKind::Preset(Preset::Momentum(j)) => {
            check_index(e, *j, n)?;
            PhaseFn::momentum(n, *j)?
        }
        ExprKind::Preset(Preset::Structure) => s
            .ok_or_else(|| domain(e, "`s` cannot refer to itself"))?
            .clone(),
        ExprKind::Deriv(_) => return Err(unavailable("`dN`")),
        ExprKind::Preset(Preset::PlainMomentum(_)) => return Err(unavailable("`PN`")),
        ExprKind::Preset(Preset::Hamiltonian) => return Err(unavailable("`H`")),
        ExprKind::Exp(_) => return Err(unavailable("`exp`")),
        ExprKind::Neg(a) => lower_classical(a, n, s)?.scale(&rational(-1, 1)),
        ExprKind::Add(a, b) => lower_classical(a, n, s)?.try_add(&lower_classical(b, n, s)?)?,
        ExprKind::Sub(a, b) => lower_classical(a, n, s)?.try_sub(&lower_classical(b, n, s)?)?,
        ExprKind::Mul(a, b) => lower_classical(a, n, s)?.try_mul(&lower_classical(b, n, s)?)?,
        ExprKind::Pow(a, k) => {
            let base = lower_classical(a, n, s)?;
            let mut out = PhaseFn::constant(n, rational(1, 1));
            for _ in 0..*k {
                out = out.try_mul(&base)?;
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use ggc_core::MultiIndex;

    fn ctx(dim: usize, s: Option<CoefFn>) -> Context {
        Context {
            dim,
            s,
            params: Params::default(),
        }
    }

    fn q(src: &str, c: &Context) -> DiffOp {
        lower_quantum(&parse(src).unwrap(), c).unwrap()
    }

    #[test]
    fn canonical_pair_lowers_to_identity() {
        assert_eq!(q("d1*x1 - x1*d1", &ctx(1, None)), DiffOp::identity(1));
    }

    #[test]
    fn worked_operator() {
        let e = CoefFn::exp_linear(vec![ComplexRational::i()]);
        let expected = DiffOp::from_term(MultiIndex(vec![1]), e.scale(&-ComplexRational::i()));
        assert_eq!(q("-i*exp(i*x1)*d1", &ctx(1, None)), expected);
    }

    #[test]
    fn presets() {
        let x = CoefFn::coord(1, 0).unwrap();
        let s = &x * &x;
        let c = ctx(1, Some(s.clone()));
        assert_eq!(q("p1", &c), geomentum(0, &s, &Params::default()).unwrap());
        assert_eq!(q("P1", &c), q("-i*d1", &c));
        assert_eq!(q("s", &c), q("x1^2", &c));
        assert_eq!(q("H", &c), q("-1/2*d1^2 + 1/2*x1^2", &c));
    }

    #[test]
    fn domain_errors() {
        let c = ctx(1, None);
        let fails = |src: &str| lower_quantum(&parse(src).unwrap(), &c).is_err();
        assert!(fails("s"));
        assert!(fails("p1"));
        assert!(fails("x2"));
        assert!(fails("exp(x1^2)"));
        assert!(fails("exp(1 + x1)"));
        assert!(fails("exp(d1)"));
        assert!(lower_quantum(&parse("H").unwrap(), &ctx(2, None)).is_err());
    }

    #[test]
    fn classical_lowering() {
        let e = parse("x1*p1 - 2*p1^2").unwrap();
        let f = lower_classical(&e, 1, None).unwrap();
        assert_eq!(f.to_string(), "x1*p1 - 2*p1^2");
        assert!(lower_classical(&parse("d1").unwrap(), 1, None).is_err());
        assert!(lower_classical(&parse("exp(i*x1)").unwrap(), 1, None).is_err());
        let s = PhaseFn::position(1, 0).unwrap();
        assert_eq!(
            lower_classical(&parse("s*p1").unwrap(), 1, Some(&s))
                .unwrap()
                .to_string(),
            "x1*p1"
        );
    }
}
