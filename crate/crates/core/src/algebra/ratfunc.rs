//! Rational functions `num/den` in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Extension, FieldElement};
use super::poly::{Degree, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Normalizes `num/den`: cancels the gcd and makes `den` monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inverse().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The polynomial `num` when the denominator is 1.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial().then(|| self.num.clone())
    }

    /// `deg num - deg den`.
    pub fn degree(&self) -> Degree {
        match self.num.degree() {
            Degree::NegInfinity => Degree::NegInfinity,
            Degree::Finite(n) => Degree::Finite(n - self.den.udeg() as i64),
        }
    }

    pub fn extension(&self) -> Extension {
        self.num
            .extension()
            .join(self.den.extension())
            .expect("rational function with incompatible coefficient fields")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        let e = u32::try_from(exp).expect("exponent too large");
        // num and den stay coprime under powers.
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: if c.is_zero() {
                Polynomial::one()
            } else {
                self.den.clone()
            },
        }
    }

    /// Evaluates `A(self)` for a polynomial `A`.
    ///
    /// With `self = n/d` this is `sum a_i n^i d^(m-i) / d^m`; the numerator
    /// is `a_m n^m` modulo `d`, hence already coprime to `d^m`.
    pub fn compose_into(&self, outer: &Polynomial) -> Self {
        if outer.is_zero() {
            return Self::zero();
        }
        let m = outer.udeg();
        let mut num = Polynomial::zero();
        let mut d_pow = Polynomial::one();
        // Horner from the top: acc = acc * n + a_i * d^(m-i)
        for c in outer.coeffs().iter().rev() {
            num = &(&num * &self.num) + &d_pow.scale(c);
            d_pow = &d_pow * &self.den;
        }
        let den = self.den.pow(m as u32);
        let lc = den.leading_coeff();
        RationalFunction {
            num: num.scale(&lc.inverse().expect("nonzero")),
            den: den.monic(),
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // Cross cancellation keeps both gcds small.
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let (n1, d2) = (self.num.exact_div(&g1).expect("divides"), rhs.den.exact_div(&g1).expect("divides"));
        let (n2, d1) = (rhs.num.exact_div(&g2).expect("divides"), self.den.exact_div(&g2).expect("divides"));
        let den = &d1 * &d2;
        let lc = den.leading_coeff().inverse().expect("nonzero");
        RationalFunction {
            num: (&n1 * &n2).scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::inverse`] to handle it.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inverse().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
