use std::fmt;

use super::field::{Field, Rational};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Reduced quotient `num/den` of polynomials in `t`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
/// Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Polynomial::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().expect("nonzero").inv()?;
        Ok(RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(num: Polynomial<F>) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The constant value, if the function does not depend on `t`.
    pub fn as_constant(&self) -> Option<F> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(F::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// Exact value at `t0`; a vanishing reduced denominator is a pole.
    pub fn evaluate_at(&self, t0: &F) -> Result<F> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(t0.to_string()));
        }
        self.num.eval(t0).div(&d)
    }

    /// `self(inner(t))`, by Horner's rule over the function field.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let horner = |p: &Polynomial<F>| {
            p.coeffs().iter().rev().fold(Self::zero(), |acc, c| {
                acc.mul(inner).add(&Self::constant(c.clone()))
            })
        };
        horner(&self.num).div(&horner(&self.den))
    }

    pub fn render(&self, var: &str) -> String {
        let wrap = |p: &Polynomial<F>| {
            let s = p.render(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
                || s.contains(['+', '*', '^', '/'])
            {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.degree() == Some(0) {
            self.num.render(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominator")
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(q: Rational) -> Self {
        Self::constant(F::from_rational(q))
    }
    fn imaginary_unit() -> Option<Self> {
        F::imaginary_unit().map(Self::constant)
    }
    fn try_sqrt(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.try_sqrt())
            .map(Self::constant)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    type Rf = RationalFunction<G>;

    fn poly(cs: &[i64]) -> Polynomial<G> {
        Polynomial::new(cs.iter().map(|&c| G::from_int(c)).collect())
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let f = Rf::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f, Rf::from_poly(poly(&[1, 1])));
    }

    #[test]
    fn evaluation_and_poles() {
        let t = Rf::var();
        let f = Rf::new(poly(&[0, 1, 1]), poly(&[0, 1])).unwrap();
        assert_eq!(f.evaluate_at(&G::zero()).unwrap(), G::one());
        let inv_t = t.inv().unwrap();
        assert!(matches!(
            inv_t.evaluate_at(&G::zero()),
            Err(Error::PoleAtPoint(_))
        ));
        // (2i t)/(-4t) = -i/2
        let two_i_t = Rf::from_poly(Polynomial::monomial(G::i().mul(&G::from_int(2)), 1));
        let minus_four_t = Rf::from_poly(Polynomial::monomial(G::from_int(-4), 1));
        let g = two_i_t.div(&minus_four_t).unwrap();
        assert_eq!(
            g.evaluate_at(&G::zero()).unwrap(),
            G::i().mul(&G::frac(-1, 2))
        );
    }

    #[test]
    fn denominators_are_monic() {
        let f = Rf::new(poly(&[3]), poly(&[0, 6])).unwrap();
        assert_eq!(f.den(), &poly(&[0, 1]));
        assert_eq!(f.num(), &Polynomial::constant(G::frac(1, 2)));
        assert_eq!(f.render("t"), "(1/2)/t");
    }

    #[test]
    fn composition() {
        // f(s) = 1/(s+1), s = t^2  ->  1/(t^2+1)
        let f = Rf::new(poly(&[1]), poly(&[1, 1])).unwrap();
        let inner = Rf::from_poly(poly(&[0, 0, 1]));
        assert_eq!(
            f.compose(&inner).unwrap(),
            Rf::new(poly(&[1]), poly(&[1, 0, 1])).unwrap()
        );
    }
}
