use ggc_core::ComplexRational;

use super::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `s`, the structural function of the current context.
    Structure,
    /// `H`, the harmonic oscillator built from the context parameters.
    Hamiltonian,
    /// `pN`: geomentum in quantum mode, phase-space momentum in classical mode.
    Momentum(usize),
    /// `PN`, the plain momentum `−iℏ∂_N`.
    PlainMomentum(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Scalar(ComplexRational),
    /// 0-based coordinate index.
    Coord(usize),
    /// 0-based derivative index.
    Deriv(usize),
    Preset(Preset),
    Exp(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    /// Largest 1-based index mentioned by `xN`, `dN`, `pN` or `PN`; 0 if none.
    pub fn max_index(&self) -> usize {
        match &self.kind {
            ExprKind::Coord(j) | ExprKind::Deriv(j) => j + 1,
            ExprKind::Preset(Preset::Momentum(j) | Preset::PlainMomentum(j)) => j + 1,
            ExprKind::Scalar(_) | ExprKind::Preset(_) => 0,
            ExprKind::Exp(a) | ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.max_index(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                a.max_index().max(b.max_index())
            }
        }
    }
}
