//! Exact complex rationals.
//!
//! Both parts are [`BigRational`], which keeps itself reduced with a positive
//! denominator, so derived equality and ordering are structural.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        ComplexRational::real(BigRational::from_integer(n.into()))
    }

    pub fn real(re: BigRational) -> Self {
        ComplexRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn imag(im: BigRational) -> Self {
        ComplexRational {
            re: BigRational::zero(),
            im,
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ComplexRational::imag(BigRational::one())
    }

    /// Shorthand for `a/b + (c/d) i` in tests and presets.
    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        ComplexRational::new(rational(re.0, re.1), rational(im.0, im.1))
    }

    pub fn zero() -> Self {
        ComplexRational::default()
    }

    pub fn one() -> Self {
        ComplexRational::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ComplexRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ComplexRational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when the leading printed character is a minus sign.
    pub(crate) fn prints_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else if self.im.is_zero() {
            self.re.is_negative()
        } else {
            false
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_one() {
        write!(f, "i")
    } else if (-r).is_one() {
        write!(f, "-i")
    } else {
        write_rational(f, r)?;
        write!(f, "i")
    }
}

/// Prints `3/2`, `-i`, `1/2i` or `(3/2 - 1/2i)`; every form is a literal of
/// the operator DSL.
impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write_rational(f, &self.re),
            (true, false) => write_imag(f, &self.im),
            (false, false) => {
                write!(f, "(")?;
                write_rational(f, &self.re)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    write_imag(f, &-&self.im)?;
                } else {
                    write!(f, " + ")?;
                    write_imag(f, &self.im)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl From<i64> for ComplexRational {
    fn from(n: i64) -> Self {
        ComplexRational::from_int(n)
    }
}

impl From<BigRational> for ComplexRational {
    fn from(r: BigRational) -> Self {
        ComplexRational::real(r)
    }
}

impl<'a> Add<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ComplexRational) -> ComplexRational {
        self * &rhs.inv().expect("division by zero complex rational")
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(-&self.re, -&self.im)
    }
}

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexRational {
            type Output = ComplexRational;
            fn $m(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ComplexRational> for ComplexRational {
    fn add_assign(&mut self, rhs: &ComplexRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRational> for ComplexRational {
    fn sub_assign(&mut self, rhs: &ComplexRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRational> for ComplexRational {
    fn mul_assign(&mut self, rhs: &ComplexRational) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_stay_reduced() {
        let z = ComplexRational::new(rational(4, 8), rational(-6, -9));
        assert_eq!(z, ComplexRational::from_parts((1, 2), (2, 3)));
        assert_eq!(*z.re.denom(), BigInt::from(2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = ComplexRational::i();
        assert_eq!(&i * &i, ComplexRational::from_int(-1));
    }

    #[test]
    fn inverse_round_trips() {
        let z = ComplexRational::from_parts((3, 2), (-1, 5));
        assert_eq!(&z * &z.inv().unwrap(), ComplexRational::one());
        assert!(ComplexRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            ComplexRational::from_parts((3, 2), (1, 2)).to_string(),
            "(3/2 + 1/2i)"
        );
        assert_eq!(
            ComplexRational::from_parts((3, 2), (-1, 1)).to_string(),
            "(3/2 - i)"
        );
        assert_eq!(ComplexRational::i().to_string(), "i");
        assert_eq!((-ComplexRational::i()).to_string(), "-i");
        assert_eq!(
            ComplexRational::from_parts((0, 1), (-2, 3)).to_string(),
            "-2/3i"
        );
        assert_eq!(ComplexRational::from_int(-7).to_string(), "-7");
    }
}
