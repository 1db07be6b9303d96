use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::field::{rational_sqrt, Field, Rational};
use crate::error::{Error, Result};

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// Both components are kept in lowest terms by [`Rational`], so equality is
/// componentwise and structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(v)), Rational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::from_integer(BigInt::from(1)))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }
    fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero())
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Self::i())
    }

    /// Square root in ℚ(i): exists iff |z| is rational and both
    /// `(|z| ± re)/2` are rational squares.
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let modulus = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        let p = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let mut q = rational_sqrt(&((&modulus - &self.re) / &two))?;
        if self.im.is_negative() {
            q = -q;
        }
        let root = Self::new(p, q);
        (Field::mul(&root, &root) == *self).then_some(root)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Rational::from_integer(BigInt::from(1));
        let imag = |f: &mut fmt::Formatter<'_>, q: &Rational, lead: bool| -> fmt::Result {
            let sign = if q.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            let a = q.abs();
            if a == one {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{a}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, &self.im, false)
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $field:ident) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                Field::$field(self, rhs)
            }
        }
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                Field::$field(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

/// Panics on division by zero, like the integer operators.
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        Field::div(self, rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Field::neg(self)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Field::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            Rational::new(re.0.into(), re.1.into()),
            Rational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn conjugate_product_is_norm() {
        let a = g((1, 2), (1, 1));
        let b = g((1, 2), (-1, 1));
        assert_eq!(&a * &b, GaussianRational::frac(5, 4));
    }

    #[test]
    fn inverse_of_i() {
        let i = GaussianRational::i();
        assert_eq!(i.inv().unwrap(), -GaussianRational::i());
        assert_eq!(GaussianRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        let w = g((3, 2), (-2, 5));
        let sq = &w * &w;
        let r = sq.try_sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        assert_eq!(
            GaussianRational::from_int(-4).try_sqrt(),
            Some(g((0, 1), (2, 1)))
        );
        assert_eq!(GaussianRational::from_int(2).try_sqrt(), None);
        assert_eq!(GaussianRational::i().try_sqrt(), None);
    }

    #[test]
    fn display() {
        assert_eq!(g((-1, 2), (0, 1)).to_string(), "-1/2");
        assert_eq!(g((0, 1), (-1, 1)).to_string(), "-i");
        assert_eq!(g((1, 1), (3, 4)).to_string(), "1+3/4*i");
    }
}
