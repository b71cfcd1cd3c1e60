use ggc_core::scalar::rational;
use ggc_core::ComplexRational;

use super::ast::{Expr, ExprKind, Preset};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

const IDENTIFIERS: &str = "a literal, `i`, `xN`, `dN`, `pN`, `PN`, `s`, `H`, `exp` or `(`";

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, at: 0 };
    let expr = p.expr()?;
    p.expect_end()?;
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::at(
            t.pos,
            expected.iter().map(|s| s.to_string()).collect(),
            t.tok.describe(),
        )
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Eof => Ok(()),
            Tok::RParen => Err(self.error(&["an operator", "end of input"])),
            _ => Err(self.error(&["`+`", "`-`", "`*`", "`^`", "end of input"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.peek().pos;
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek().tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::new(kind(boxed(lhs), boxed(rhs)), pos);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            let pos = self.bump().pos;
            let rhs = self.factor()?;
            lhs = Expr::new(ExprKind::Mul(boxed(lhs), boxed(rhs)), pos);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            let pos = self.bump().pos;
            let inner = self.factor()?;
            return Ok(Expr::new(ExprKind::Neg(boxed(inner)), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Caret {
            let pos = self.bump().pos;
            let n = match self.peek().tok {
                Tok::Int(n) => n,
                _ => return Err(self.error(&["an integer exponent"])),
            };
            let n = u32::try_from(n).map_err(|_| self.error(&["an exponent below 2^32"]))?;
            self.bump();
            base = Expr::new(ExprKind::Pow(boxed(base), n), pos);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(_) => self.scalar(),
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error(&["`)`", "an operator"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) if name == "exp" => {
                self.bump();
                if self.peek().tok != Tok::LParen {
                    return Err(self.error(&["`(`"]));
                }
                self.bump();
                let arg = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error(&["`)`", "an operator"]));
                }
                self.bump();
                Ok(Expr::new(ExprKind::Exp(boxed(arg)), t.pos))
            }
            Tok::Ident(name) => {
                let kind = identifier(name).ok_or_else(|| {
                    ParseError::at(
                        t.pos,
                        vec![IDENTIFIERS.into()],
                        format!("unknown identifier `{name}`"),
                    )
                })?;
                self.bump();
                Ok(Expr::new(kind, t.pos))
            }
            _ => Err(self.error(&[IDENTIFIERS])),
        }
    }

    /// `INT ['/' INT] ['i']`, the suffix glued to the last digit.
    fn scalar(&mut self) -> Result<Expr, ParseError> {
        let first = self.bump();
        let Tok::Int(num) = first.tok else {
            unreachable!("called on an integer token")
        };
        let mut value = ComplexRational::real(big(num, 1));
        let mut end = first.end;
        if self.peek().tok == Tok::Slash {
            self.bump();
            let den = match self.peek().tok {
                Tok::Int(0) => return Err(self.error(&["a non-zero denominator"])),
                Tok::Int(d) => d,
                _ => return Err(self.error(&["an integer denominator"])),
            };
            end = self.bump().end;
            value = ComplexRational::real(big(num, den));
        }
        let next = self.peek();
        if next.tok == Tok::Ident("i".into()) && next.start == end {
            self.bump();
            value = ComplexRational::new(rational(0, 1), value.re);
        }
        Ok(Expr::new(ExprKind::Scalar(value), first.pos))
    }
}

fn big(num: u64, den: u64) -> num_rational::BigRational {
    num_rational::BigRational::new(num.into(), den.into())
}

fn index(rest: &str) -> Option<usize> {
    if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse::<usize>().ok().map(|n| n - 1)
}

fn identifier(name: &str) -> Option<ExprKind> {
    match name {
        "i" => return Some(ExprKind::Scalar(ComplexRational::i())),
        "s" => return Some(ExprKind::Preset(Preset::Structure)),
        "H" => return Some(ExprKind::Preset(Preset::Hamiltonian)),
        _ => {}
    }
    let (head, rest) = name.split_at(1);
    let j = index(rest)?;
    Some(match head {
        "x" => ExprKind::Coord(j),
        "d" => ExprKind::Deriv(j),
        "p" => ExprKind::Preset(Preset::Momentum(j)),
        "P" => ExprKind::Preset(Preset::PlainMomentum(j)),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::Pos;
    use num_complex::Complex64;

    fn eval_const(e: &Expr) -> Complex64 {
        match &e.kind {
            ExprKind::Scalar(c) => {
                let (re, im) = c.to_f64_pair();
                Complex64::new(re, im)
            }
            ExprKind::Neg(a) => -eval_const(a),
            ExprKind::Add(a, b) => eval_const(a) + eval_const(b),
            ExprKind::Sub(a, b) => eval_const(a) - eval_const(b),
            ExprKind::Mul(a, b) => eval_const(a) * eval_const(b),
            ExprKind::Pow(a, n) => eval_const(a).powu(*n),
            ExprKind::Exp(a) => eval_const(a).exp(),
            _ => panic!("not a constant"),
        }
    }

    fn val(src: &str) -> Complex64 {
        eval_const(&parse(src).unwrap())
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(val("1 - 2 - 3"), Complex64::new(-4.0, 0.0));
        assert_eq!(val("2 + 3*4^2"), Complex64::new(50.0, 0.0));
        assert_eq!(val("-2^2"), Complex64::new(-4.0, 0.0));
        assert_eq!(val("(1 + 1)^3*2"), Complex64::new(16.0, 0.0));
        assert_eq!(val("2^2^3"), Complex64::new(64.0, 0.0));
    }

    #[test]
    fn imaginary_literals() {
        assert_eq!(val("3/2i"), Complex64::new(0.0, 1.5));
        assert_eq!(val("i*i"), Complex64::new(-1.0, 0.0));
        assert_eq!(val("-2i"), Complex64::new(0.0, -2.0));
        let err = parse("3/2 i").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 5 });
    }

    #[test]
    fn identifiers() {
        let e = parse("x3*d12").unwrap();
        let ExprKind::Mul(a, b) = e.kind else {
            panic!()
        };
        assert_eq!(a.kind, ExprKind::Coord(2));
        assert_eq!(b.kind, ExprKind::Deriv(11));
        assert_eq!(
            parse("P2").unwrap().kind,
            ExprKind::Preset(Preset::PlainMomentum(1))
        );
        assert_eq!(parse("p1 + H*s").unwrap().max_index(), 1);
    }

    #[test]
    fn unknown_identifiers_are_reported_with_position() {
        let err = parse("x1 + y2").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 6 });
        assert!(err.found.contains("y2"));
        assert!(parse("x0").is_err());
        assert!(parse("x01").is_err());
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let err = parse("d1 x1").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 4 });
        assert!(err.expected.iter().any(|e| e == "`*`"));
    }

    #[test]
    fn structural_errors() {
        assert!(parse("").is_err());
        assert!(parse("(x1").is_err());
        assert!(parse("x1)").is_err());
        assert!(parse("exp x1").is_err());
        assert!(parse("x1^d1").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x1 / 2").is_err());
        let err = parse("x1 +\n  * d1").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, column: 3 });
    }
}
