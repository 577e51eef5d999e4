//! Squarefree decomposition (Yun) and the square tests built on it.
//!
//! Nothing here factors into irreducibles. A polynomial is a square in
//! `C[X]` exactly when every multiplicity of its squarefree decomposition
//! is even, since constants always have complex square roots.

use super::field::{Extension, FieldElement};
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// `unit * prod(factor_i ^ mult_i)` with monic, squarefree, pairwise
/// coprime, nonconstant factors listed by increasing multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    pub fn all_even(&self) -> bool {
        self.factors.iter().all(|(_, m)| m % 2 == 0)
    }

    /// Product of the factors with odd multiplicity.
    pub fn odd_part(&self) -> Polynomial {
        self.factors
            .iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(Polynomial::one(), |acc, (f, _)| &acc * f)
    }

    /// `prod factor_i ^ floor(mult_i / 2)`.
    pub fn half_part(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, m)| &acc * &f.pow(m / 2))
    }
}

/// Yun's algorithm.
pub fn squarefree_decompose(f: &Polynomial) -> Result<SquarefreeDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition"));
    }
    let unit = f.leading_coeff();
    let f = f.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { unit, factors });
    }
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d)?;
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

pub fn is_squarefree(f: &Polynomial) -> bool {
    !f.is_zero() && f.gcd(&f.derivative()).map(|g| g.is_one()).unwrap_or(false)
}

/// Monic product of the odd-multiplicity factors.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    Ok(squarefree_decompose(f)?.odd_part())
}

/// Whether a nonzero rational function is a square in `C(X)`.
pub fn is_square_in_closure(f: &RationalFunction) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput("square test"));
    }
    Ok(squarefree_decompose(f.numer())?.all_even() && squarefree_decompose(f.denom())?.all_even())
}

/// Polynomial variant of [`is_square_in_closure`].
pub fn is_square_polynomial(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput("square test"));
    }
    Ok(squarefree_decompose(f)?.all_even())
}

/// `f = unit * root^2 * radicand` with `radicand` monic squarefree polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareSplit {
    pub unit: FieldElement,
    pub root: RationalFunction,
    pub radicand: Polynomial,
}

pub fn split_square(f: &RationalFunction) -> Result<SquareSplit> {
    if f.is_zero() {
        return Err(Error::ZeroInput("square split"));
    }
    let num = squarefree_decompose(f.numer())?;
    let den = squarefree_decompose(f.denom())?;
    // 1/g^m = g^{-(m+1)} * g for odd m
    let den_root = den
        .factors
        .iter()
        .fold(Polynomial::one(), |acc, (g, m)| &acc * &g.pow(m.div_ceil(2)));
    let root = RationalFunction::new(num.half_part(), den_root)?;
    let radicand = &num.odd_part() * &den.odd_part();
    Ok(SquareSplit {
        unit: &num.unit / &den.unit,
        root,
        radicand,
    })
}

/// Exact square root of a polynomial.
///
/// The leading coefficient may force a quadratic extension `Q(sqrt lambda)`
/// when `f` is rational; otherwise the root must live in `f`'s own field.
/// The result has leading coefficient with positive rational part (or
/// positive irrational part when the rational part is zero).
pub fn poly_sqrt(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroInput("square root"));
    }
    let n = f.udeg();
    if n % 2 == 1 {
        return Err(Error::NotASquare);
    }
    let m = n / 2;
    let ext = f.extension();
    let lead = f.leading_coeff().sqrt_within(ext).ok_or(Error::NotASquare)?;
    if ext.join(lead.extension()).is_none() {
        return Err(Error::NotASquare);
    }
    let two_lead_inv = (&lead * &FieldElement::from_int(2)).inverse().expect("nonzero");
    // s = sum s_i X^i, fill from the top: coefficient of X^{2m-k} in s^2
    // equals 2 s_m s_{m-k} + sum_{0<i<k} s_{m-i} s_{m-k+i}.
    let mut s = vec![FieldElement::zero(); m + 1];
    s[m] = lead;
    for k in 1..=m {
        let mut acc = f.coeff(2 * m - k);
        for i in 1..k {
            acc = &acc - &(&s[m - i] * &s[m - k + i]);
        }
        s[m - k] = &acc * &two_lead_inv;
    }
    let root = Polynomial::new(s);
    if &(&root * &root) == f {
        Ok(root)
    } else {
        Err(Error::NotASquare)
    }
}

/// Whether the coefficient extension of `p` is compatible with `ext`.
pub fn fits(p: &Polynomial, ext: Extension) -> bool {
    p.extension().join(ext).is_some()
}
