//! Exact coefficient fields: the rationals, one quadratic field `Q(sqrt d)`,
//! and the Eisenstein field `Q(zeta_3)`.
//!
//! A [`FieldElement`] carries its own extension tag. Rationals combine with
//! anything; two irrational elements must live in the same extension.
//! Elements are kept canonical: an extension element whose irrational part
//! vanishes is demoted to [`FieldElement::Rational`], so structural equality
//! is value equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which extension of the rationals an element needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extension {
    Rational,
    /// `Q(sqrt d)` with `d` squarefree, `d != 0, 1`.
    Sqrt(i64),
    /// `Q(zeta_3)`, presented as `Q[t]/(t^2 + t + 1)`.
    Zeta3,
}

impl Extension {
    /// Least common extension, or `None` if the two cannot coexist.
    pub fn join(self, other: Extension) -> Option<Extension> {
        match (self, other) {
            (Extension::Rational, e) | (e, Extension::Rational) => Some(e),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extension::Rational => write!(f, "Q"),
            Extension::Sqrt(d) => write!(f, "Q_sqrt:{d}"),
            Extension::Zeta3 => write!(f, "Q_zeta3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    /// `a + b*sqrt(d)`, `b != 0`.
    Quadratic {
        a: BigRational,
        b: BigRational,
        d: i64,
    },
    /// `a + b*zeta_3`, `b != 0`.
    Cyclotomic { a: BigRational, b: BigRational },
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

const TRIAL_DIVISION_LIMIT: u32 = 1 << 20;

/// Splits `|n|` as `s^2 * core`. The core is squarefree unless `|n|` has a
/// repeated prime factor beyond the trial-division limit.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut square_root = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    while &p * &p <= rest && p < limit {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count > 0 {
            square_root *= p.pow(count / 2);
            if count % 2 == 1 {
                core *= &p;
            }
        }
        p += 1u32;
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        square_root *= r;
    } else {
        core *= rest;
    }
    (square_root, core)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Writes a nonzero rational as `lambda * r^2` with `lambda` a squarefree integer.
pub fn squarefree_rational_part(q: &BigRational) -> (i64, BigRational) {
    assert!(!q.is_zero(), "squarefree part of zero");
    // q = n/d = n*d / d^2
    let nd = q.numer() * q.denom();
    let (s, core) = square_split(&nd);
    let lambda = if q.is_negative() { -core } else { core };
    let lambda = lambda.to_i64().expect("squarefree part exceeds i64");
    let r = BigRational::new(s, q.denom().clone());
    (lambda, r)
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `zeta_3`, a primitive third root of unity.
    pub fn zeta3() -> Self {
        FieldElement::Cyclotomic {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// `sqrt(d)` for squarefree `d`.
    pub fn sqrt_of_int(d: i64) -> Self {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    /// `a + b sqrt(d)`, canonicalized. `d` must be squarefree.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() || d == 1 {
            if d == 1 {
                return FieldElement::Rational(a + b);
            }
            return FieldElement::Rational(a);
        }
        assert!(d != 0, "sqrt(0) is not an extension generator");
        FieldElement::Quadratic { a, b, d }
    }

    /// `a + b zeta_3`, canonicalized.
    pub fn cyclotomic(a: BigRational, b: BigRational) -> Self {
        if b.is_zero() {
            FieldElement::Rational(a)
        } else {
            FieldElement::Cyclotomic { a, b }
        }
    }

    pub fn extension(&self) -> Extension {
        match self {
            FieldElement::Rational(_) => Extension::Rational,
            FieldElement::Quadratic { d, .. } => Extension::Sqrt(*d),
            FieldElement::Cyclotomic { .. } => Extension::Zeta3,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Basis coordinates `(a, b)` of `a + b*theta` in the given extension.
    pub fn coordinates(&self) -> (BigRational, BigRational) {
        match self {
            FieldElement::Rational(q) => (q.clone(), BigRational::zero()),
            FieldElement::Quadratic { a, b, .. } | FieldElement::Cyclotomic { a, b } => {
                (a.clone(), b.clone())
            }
        }
    }

    /// Rebuilds an element from coordinates in a given extension.
    pub fn from_coordinates(ext: Extension, a: BigRational, b: BigRational) -> Self {
        match ext {
            Extension::Rational => {
                assert!(b.is_zero(), "irrational coordinate in the rational field");
                FieldElement::Rational(a)
            }
            Extension::Sqrt(d) => Self::quadratic(a, b, d),
            Extension::Zeta3 => Self::cyclotomic(a, b),
        }
    }

    /// The rational part in the standard basis (`a` in `a + b*theta`).
    pub fn rational_part(&self) -> BigRational {
        self.coordinates().0
    }

    fn joint(&self, other: &Self) -> Extension {
        self.extension()
            .join(other.extension())
            .unwrap_or_else(|| {
                panic!(
                    "incompatible coefficient fields {} and {}",
                    self.extension(),
                    other.extension()
                )
            })
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Quadratic { a, b, d } => {
                let norm = a * a - rat(*d) * b * b;
                Self::quadratic(a / &norm, -(b / &norm), *d)
            }
            FieldElement::Cyclotomic { a, b } => {
                // conj(a + b z) = (a - b) - b z, norm = a^2 - ab + b^2
                let norm = a * a - a * b + b * b;
                Self::cyclotomic((a - b) / &norm, -(b / &norm))
            }
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Square root inside the element's own field, or in `Q(sqrt lambda)`
    /// for a rational non-square. Returns `None` when no root exists in
    /// any supported extension compatible with `within`.
    ///
    /// The root is sign-normalized: positive rational part, or positive
    /// irrational coordinate when the rational part is zero.
    pub fn sqrt_within(&self, within: Extension) -> Option<Self> {
        let root = match self {
            FieldElement::Rational(q) => {
                if q.is_zero() {
                    return Some(Self::zero());
                }
                if let Some(r) = rational_sqrt(q) {
                    Self::Rational(r)
                } else {
                    let (lambda, r) = squarefree_rational_part(q);
                    match within {
                        Extension::Rational => Self::quadratic(BigRational::zero(), r, lambda),
                        Extension::Sqrt(d) if d == lambda => {
                            Self::quadratic(BigRational::zero(), r, lambda)
                        }
                        Extension::Zeta3 if lambda == -3 => {
                            // sqrt(-3) = 1 + 2 zeta
                            Self::cyclotomic(r.clone(), r * rat(2))
                        }
                        _ => return None,
                    }
                }
            }
            FieldElement::Quadratic { a, b, d } => {
                let (x, y) = quadratic_sqrt(a, b, *d)?;
                Self::quadratic(x, y, *d)
            }
            FieldElement::Cyclotomic { a, b } => {
                // a + b z = (a - b/2) + (b/2) sqrt(-3)
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let a2 = a - b * &half;
                let b2 = b * &half;
                let (x, y) = quadratic_sqrt(&a2, &b2, -3)?;
                // x + y sqrt(-3) = (x + y) + 2y z
                Self::cyclotomic(&x + &y, y * rat(2))
            }
        };
        Some(root.sign_normalized())
    }

    /// Returns `self` or `-self`, whichever has positive leading coordinate.
    pub fn sign_normalized(self) -> Self {
        let (a, b) = self.coordinates();
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            -self
        } else {
            self
        }
    }
}

/// Solves `(x + y sqrt d)^2 = a + b sqrt d` over the rationals, `b != 0`.
fn quadratic_sqrt(a: &BigRational, b: &BigRational, d: i64) -> Option<(BigRational, BigRational)> {
    let dd = rat(d);
    let norm = a * a - &dd * b * b;
    let n = rational_sqrt(&norm)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for candidate in [(a + &n) * &half, (a - &n) * &half] {
        if candidate.is_zero() {
            continue;
        }
        if let Some(x) = rational_sqrt(&candidate) {
            let y = b / (&x * rat(2));
            if &(&x * &x + &dd * &y * &y) == a {
                return Some((x, y));
            }
        }
    }
    None
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::one()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<BigRational> for FieldElement {
    fn from(q: BigRational) -> Self {
        FieldElement::Rational(q)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(x), FieldElement::Rational(y)) = (self, rhs) {
            return FieldElement::Rational(x + y);
        }
        let ext = self.joint(rhs);
        let (a, b) = self.coordinates();
        let (c, e) = rhs.coordinates();
        FieldElement::from_coordinates(ext, a + c, b + e)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(x), FieldElement::Rational(y)) = (self, rhs) {
            return FieldElement::Rational(x - y);
        }
        let ext = self.joint(rhs);
        let (a, b) = self.coordinates();
        let (c, e) = rhs.coordinates();
        FieldElement::from_coordinates(ext, a - c, b - e)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(x), FieldElement::Rational(y)) = (self, rhs) {
            return FieldElement::Rational(x * y);
        }
        let ext = self.joint(rhs);
        let (a, b) = self.coordinates();
        let (c, e) = rhs.coordinates();
        match ext {
            Extension::Rational => unreachable!(),
            Extension::Sqrt(d) => {
                let re = &a * &c + rat(d) * &b * &e;
                let im = &a * &e + &b * &c;
                FieldElement::quadratic(re, im, d)
            }
            Extension::Zeta3 => {
                // z^2 = -1 - z
                let be = &b * &e;
                let re = &a * &c - &be;
                let im = &a * &e + &b * &c - be;
                FieldElement::cyclotomic(re, im)
            }
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inverse().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Quadratic { a, b, d } => FieldElement::Quadratic {
                a: -a,
                b: -b,
                d: *d,
            },
            FieldElement::Cyclotomic { a, b } => FieldElement::Cyclotomic { a: -a, b: -b },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, gen) = match self {
            FieldElement::Rational(q) => return write!(f, "{}", fmt_rational(q)),
            FieldElement::Quadratic { a, b, d } => (a, b, format!("sqrt({d})")),
            FieldElement::Cyclotomic { a, b } => (a, b, "z3".to_string()),
        };
        if a.is_zero() {
            write!(f, "{}*{}", fmt_rational(b), gen)
        } else if b.is_negative() {
            write!(f, "({} - {}*{})", fmt_rational(a), fmt_rational(&-b), gen)
        } else {
            write!(f, "({} + {}*{})", fmt_rational(a), fmt_rational(b), gen)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zeta_is_a_primitive_cube_root() {
        let z = FieldElement::zeta3();
        assert_ne!(z, FieldElement::one());
        assert_eq!(z.pow(3), FieldElement::one());
        let s = &(&FieldElement::one() + &z) + &z.pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn quadratic_arithmetic_demotes() {
        let r2 = FieldElement::sqrt_of_int(2);
        assert_eq!(&r2 * &r2, FieldElement::from_int(2));
        let x = FieldElement::quadratic(q(1, 2), q(3, 1), 5);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, FieldElement::one());
    }

    #[test]
    fn cyclotomic_inverse() {
        let x = FieldElement::cyclotomic(q(2, 3), q(-1, 1));
        assert_eq!(&x * &x.inverse().unwrap(), FieldElement::one());
    }

    #[test]
    fn square_roots() {
        let four_ninths = FieldElement::from_ratio(4, 9);
        assert_eq!(
            four_ninths.sqrt_within(Extension::Rational),
            Some(FieldElement::from_ratio(2, 3))
        );
        let two = FieldElement::from_int(2);
        let r = two.sqrt_within(Extension::Rational).unwrap();
        assert_eq!(r, FieldElement::sqrt_of_int(2));
        assert_eq!(two.sqrt_within(Extension::Sqrt(3)), None);
        let m3 = FieldElement::from_int(-3);
        let r = m3.sqrt_within(Extension::Zeta3).unwrap();
        assert_eq!(&r * &r, m3);
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let y = FieldElement::quadratic(q(3, 1), q(2, 1), 2);
        let r = y.sqrt_within(Extension::Sqrt(2)).unwrap();
        assert_eq!(r, FieldElement::quadratic(q(1, 1), q(1, 1), 2));
        let z = FieldElement::zeta3();
        let r = z.sqrt_within(Extension::Zeta3).unwrap();
        assert_eq!(&r * &r, z);
    }

    #[test]
    fn squarefree_part_of_rationals() {
        assert_eq!(squarefree_rational_part(&q(12, 1)), (3, q(2, 1)));
        assert_eq!(squarefree_rational_part(&q(-1, 8)), (-2, q(1, 4)));
        let (l, r) = squarefree_rational_part(&q(50, 3));
        assert_eq!(q(l, 1) * &r * &r, q(50, 3));
    }

    #[test]
    #[should_panic(expected = "incompatible coefficient fields")]
    fn mixing_extensions_panics() {
        let _ = &FieldElement::sqrt_of_int(2) + &FieldElement::zeta3();
    }
}
