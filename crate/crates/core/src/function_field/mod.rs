//! Places, valuations and heights on the rational function field `C(X)`.
//!
//! Complex places are grouped into *bundles*: all roots of one squarefree
//! monic polynomial over the coefficient field. Within a gcd-free basis
//! every rational function has the same valuation at each root of a
//! bundle, so sums over places become sums over bundles weighted by the
//! bundle degree.

pub mod quadratic;
mod suite;

use std::fmt;

use serde::Serialize;

use crate::algebra::{gcd_free_basis, Polynomial, RationalFunction};
use crate::error::{Error, Result};

pub use quadratic::{
    ext_height, ext_valuation, extension_places, genus, norm_valuation, places_above,
    ExtensionPlace, QuadExtElement,
};
pub(crate) use quadratic::{pure_valuation, splitting, Splitting};
pub use suite::{lemma1_property_suite, sum_formula_suite, AssertionRecord, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlaceBundle {
    /// Roots of a monic squarefree nonconstant polynomial.
    Finite(Polynomial),
    Infinite,
}

impl PlaceBundle {
    pub fn finite(index: Polynomial) -> Result<Self> {
        if index.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !crate::algebra::is_squarefree(&index) {
            return Err(Error::NotSquarefree);
        }
        Ok(PlaceBundle::Finite(index.monic()))
    }

    /// Number of complex places in the bundle.
    pub fn bundle_degree(&self) -> usize {
        match self {
            PlaceBundle::Finite(p) => p.udeg(),
            PlaceBundle::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PlaceBundle::Infinite)
    }
}

impl fmt::Display for PlaceBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceBundle::Finite(p) => write!(f, "[{p}]"),
            PlaceBundle::Infinite => write!(f, "[inf]"),
        }
    }
}

/// A valuation, with `+inf` for the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    PlusInfinity,
}

/// Serialized as an integer, or the string `"+inf"`.
impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::PlusInfinity => s.serialize_str("+inf"),
        }
    }
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::PlusInfinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::PlusInfinity => write!(f, "+inf"),
        }
    }
}

/// A height, with `+inf` for the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Height {
    Finite(u64),
    Infinity,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinity => None,
        }
    }
}

/// Order of a nonzero polynomial along a bundle.
pub(crate) fn poly_order(p: &Polynomial, index: &Polynomial) -> Result<i64> {
    let mut rest = p.clone();
    let mut count = 0i64;
    while let Some(q) = rest.try_div(index) {
        rest = q;
        count += 1;
    }
    if !rest.is_coprime(index) {
        return Err(Error::NonUniformBundle(index.to_string()));
    }
    Ok(count)
}

/// Valuation of a nonzero rational function at a place bundle.
pub(crate) fn valuation_nonzero(f: &RationalFunction, place: &PlaceBundle) -> Result<i64> {
    debug_assert!(!f.is_zero());
    match place {
        PlaceBundle::Infinite => Ok(f.denom().udeg() as i64 - f.numer().udeg() as i64),
        PlaceBundle::Finite(index) => {
            Ok(poly_order(f.numer(), index)? - poly_order(f.denom(), index)?)
        }
    }
}

/// `nu(f)` at a bundle; `+inf` for `f = 0`. Fails if the valuation differs
/// between roots of the bundle.
pub fn valuation(f: &RationalFunction, place: &PlaceBundle) -> Result<Valuation> {
    if f.is_zero() {
        return Ok(Valuation::PlusInfinity);
    }
    valuation_nonzero(f, place).map(Valuation::Finite)
}

/// Finite bundles where `f` has a zero or a pole, as a gcd-free basis.
pub fn support(f: &RationalFunction) -> Vec<PlaceBundle> {
    if f.is_zero() {
        return Vec::new();
    }
    gcd_free_basis(&[f.numer().clone(), f.denom().clone()])
        .into_iter()
        .map(PlaceBundle::Finite)
        .collect()
}

/// `(bundle, bundle_degree * valuation)` over the finite support and infinity.
pub fn weighted_valuations(f: &RationalFunction) -> Result<Vec<(PlaceBundle, i64)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("valuation sum"));
    }
    let mut out = Vec::new();
    for place in support(f).into_iter().chain([PlaceBundle::Infinite]) {
        let v = valuation_nonzero(f, &place)?;
        out.push((place.clone(), place.bundle_degree() as i64 * v));
    }
    Ok(out)
}

/// `sum_nu nu(f)` over all places of `C(X)`.
pub fn valuation_sum(f: &RationalFunction) -> Result<i64> {
    Ok(weighted_valuations(f)?.iter().map(|(_, v)| v).sum())
}

/// Whether the sum formula `sum_nu nu(f) = 0` holds.
pub fn sum_formula_check(f: &RationalFunction) -> Result<bool> {
    Ok(valuation_sum(f)? == 0)
}

/// `H(f) = max(deg num, deg den)`.
pub fn height(f: &RationalFunction) -> Height {
    if f.is_zero() {
        return Height::Infinity;
    }
    Height::Finite(f.numer().udeg().max(f.denom().udeg()) as u64)
}

/// `H(f) = -sum_nu min(0, nu(f))`, summed place by place.
pub fn height_definitional(f: &RationalFunction) -> Result<Height> {
    if f.is_zero() {
        return Ok(Height::Infinity);
    }
    let total: i64 = weighted_valuations(f)?
        .iter()
        .map(|(_, v)| -(*v).min(0))
        .sum();
    Ok(Height::Finite(total as u64))
}
