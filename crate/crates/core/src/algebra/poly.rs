//! Dense univariate polynomials over [`FieldElement`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::field::{Extension, FieldElement};
use crate::error::{Error, Result};

/// Degree of a polynomial or rational function.
///
/// The zero element has degree [`Degree::NegInfinity`], which compares
/// strictly below every finite degree and is never confused with one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// Unwraps a degree known to belong to a nonzero element.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("degree of the zero element")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::monomial(FieldElement::one(), 1)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: FieldElement, exp: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(); exp];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// Integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self::new(coeffs.into_iter().map(FieldElement::Rational).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    /// Degree as `usize`; panics on zero.
    pub fn udeg(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Smallest extension holding every coefficient.
    pub fn extension(&self) -> Extension {
        self.coeffs
            .iter()
            .fold(Extension::Rational, |acc, c| {
                acc.join(c.extension())
                    .expect("polynomial with incompatible coefficient fields")
            })
    }

    pub fn is_rational(&self) -> bool {
        self.extension() == Extension::Rational
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![FieldElement::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading_coeff().inverse().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn div_rem(&self, rhs: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.degree() < rhs.degree() {
            return Ok((Self::zero(), self.clone()));
        }
        let dr = rhs.udeg();
        let lc_inv = rhs.leading_coeff().inverse().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(); rem.len() - dr];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dr] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, r) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * r);
            }
            quot[i] = c;
        }
        rem.truncate(dr);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must be exact.
    pub fn exact_div(&self, rhs: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// `Some(self / rhs)` when `rhs` divides `self`.
    pub fn try_div(&self, rhs: &Polynomial) -> Option<Polynomial> {
        match self.div_rem(rhs) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.try_div(self).is_some()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if (self.is_constant() && !self.is_zero()) || (other.is_constant() && !other.is_zero()) {
            return Ok(Self::one());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn is_coprime(&self, other: &Polynomial) -> bool {
        self.gcd(other).map(|g| g.is_one()).unwrap_or(false)
    }

    /// Multiplicity of a nonconstant `factor` in `self` (nonzero).
    pub fn multiplicity(&self, factor: &Polynomial) -> usize {
        assert!(!factor.is_constant(), "multiplicity of a constant factor");
        let mut count = 0;
        let mut rest = self.clone();
        while let Some(q) = rest.try_div(factor) {
            rest = q;
            count += 1;
        }
        count
    }

    /// Polynomial with every coefficient mapped.
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Graded comparison used for canonical ordering: degree first, then
    /// coefficients from the top down.
    pub fn graded_cmp(&self, other: &Polynomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<FieldElement> for Polynomial {
    fn from(c: FieldElement) -> Self {
        Polynomial::constant(c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(q) if q < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, FieldElement::Rational(-q.clone()))
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 {
                write!(f, "{body}")?;
            } else if body.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn divrem_factor_identity() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn subtraction_to_zero_has_sentinel_degree() {
        let x3 = p(&[0, 0, 0, 1]);
        let z = &x3 - &x3;
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(i64::MIN));
    }

    #[test]
    fn product_expansion() {
        assert_eq!(&p(&[1, 1]) * &p(&[2, 1]), p(&[2, 3, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p(&[1, 1]).div_rem(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1, 1])).unwrap(), Polynomial::one());
        assert_eq!(
            Polynomial::zero().gcd(&Polynomial::zero()),
            Err(Error::GcdOfZeros)
        );
        assert_eq!(Polynomial::zero().gcd(&p(&[2, 4])).unwrap(), p(&[1, 2]).monic());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 3, 0, 1]).to_string(), "X^3 + 3*X - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-X");
    }
}
