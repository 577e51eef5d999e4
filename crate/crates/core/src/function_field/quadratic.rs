//! The hyperelliptic extension `K(X, sqrt D)` with `D` squarefree and monic.
//!
//! Valuations at places above a base bundle are normalized to be
//! surjective onto the integers: at a ramified place a base function
//! picks up a factor 2, at a split place it keeps its base valuation.

use std::fmt;

use serde::Serialize;

use super::{valuation_nonzero, PlaceBundle};
use crate::algebra::{gcd_free_basis, is_squarefree, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// `u + v sqrt(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtElement {
    u: RationalFunction,
    v: RationalFunction,
    d: Polynomial,
}

fn check_radicand(d: &Polynomial) -> Result<()> {
    if d.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !d.is_monic() || !is_squarefree(d) {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

impl QuadExtElement {
    pub fn new(u: RationalFunction, v: RationalFunction, d: Polynomial) -> Result<Self> {
        check_radicand(&d)?;
        Ok(QuadExtElement { u, v, d })
    }

    /// The base element `r`.
    pub fn base(r: RationalFunction, d: Polynomial) -> Result<Self> {
        Self::new(r, RationalFunction::zero(), d)
    }

    /// `r sqrt(D)`.
    pub fn radical(r: RationalFunction, d: Polynomial) -> Result<Self> {
        Self::new(RationalFunction::zero(), r, d)
    }

    /// `r sqrt(D)^eps`.
    pub fn pure(r: RationalFunction, eps: u8, d: Polynomial) -> Result<Self> {
        if eps == 0 {
            Self::base(r, d)
        } else {
            Self::radical(r, d)
        }
    }

    pub fn zero(d: Polynomial) -> Result<Self> {
        Self::base(RationalFunction::zero(), d)
    }

    pub fn base_part(&self) -> &RationalFunction {
        &self.u
    }

    pub fn radical_part(&self) -> &RationalFunction {
        &self.v
    }

    pub fn radicand(&self) -> &Polynomial {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `(r, eps)` when the element is `r sqrt(D)^eps`.
    pub fn pure_form(&self) -> Option<(&RationalFunction, u8)> {
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => Some((&self.u, 0)),
            (true, false) => Some((&self.v, 1)),
            (false, false) => None,
        }
    }

    /// `N(u + v sqrt D) = u^2 - v^2 D`.
    pub fn norm(&self) -> RationalFunction {
        let d = RationalFunction::from_poly(self.d.clone());
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &d)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::RadicandMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadExtElement {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadExtElement {
            u: -&self.u,
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = RationalFunction::from_poly(self.d.clone());
        Ok(QuadExtElement {
            u: &(&self.u * &other.u) + &(&(&self.v * &other.v) * &d),
            v: &(&self.u * &other.v) + &(&self.v * &other.u),
            d: self.d.clone(),
        })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same radicand")
    }
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pure_form() {
            Some((r, 0)) => write!(f, "{r}"),
            Some((r, _)) => write!(f, "({r})*sqrt({})", self.d),
            None => write!(f, "{} + ({})*sqrt({})", self.u, self.v, self.d),
        }
    }
}

/// A place of `K(X, sqrt D)` above a base bundle.
///
/// A split bundle contributes two entries (sheets 0 and 1), a ramified
/// bundle one entry with ramification 2. Each entry stands for
/// `below.bundle_degree()` complex places.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionPlace {
    pub below: PlaceBundle,
    pub ramification: u8,
    pub residue_count: u8,
    pub sheet: u8,
}

impl ExtensionPlace {
    pub fn is_ramified(&self) -> bool {
        self.ramification == 2
    }

    /// Number of complex places this entry represents.
    pub fn place_count(&self) -> usize {
        self.below.bundle_degree()
    }
}

impl fmt::Display for ExtensionPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ramified() {
            write!(f, "{} (ramified)", self.below)
        } else {
            write!(f, "{} (sheet {})", self.below, self.sheet)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub(crate) enum Splitting {
    Ramified,
    Split,
}

pub(crate) fn splitting(d: &Polynomial, below: &PlaceBundle) -> Result<Splitting> {
    match below {
        PlaceBundle::Infinite => Ok(if d.udeg() % 2 == 1 {
            Splitting::Ramified
        } else {
            Splitting::Split
        }),
        PlaceBundle::Finite(index) => {
            if index.divides(d) {
                Ok(Splitting::Ramified)
            } else if index.is_coprime(d) {
                Ok(Splitting::Split)
            } else {
                Err(Error::BundleNotAligned(index.to_string()))
            }
        }
    }
}

/// Places of `K(X, sqrt D)` above `below`.
pub fn extension_places(d: &Polynomial, below: &PlaceBundle) -> Result<Vec<ExtensionPlace>> {
    check_radicand(d)?;
    Ok(match splitting(d, below)? {
        Splitting::Ramified => vec![ExtensionPlace {
            below: below.clone(),
            ramification: 2,
            residue_count: 1,
            sheet: 0,
        }],
        Splitting::Split => (0..2)
            .map(|sheet| ExtensionPlace {
                below: below.clone(),
                ramification: 1,
                residue_count: 2,
                sheet,
            })
            .collect(),
    })
}

/// Valuation of `r sqrt(D)^eps` at `w`, with `r` nonzero.
pub(crate) fn pure_valuation(
    r: &RationalFunction,
    eps: u8,
    d: &Polynomial,
    w: &ExtensionPlace,
) -> Result<i64> {
    let nr = valuation_nonzero(r, &w.below)?;
    let nd = if eps == 1 {
        valuation_nonzero(&RationalFunction::from_poly(d.clone()), &w.below)?
    } else {
        0
    };
    if w.is_ramified() {
        Ok(2 * nr + nd)
    } else {
        debug_assert!(nd % 2 == 0);
        Ok(nr + nd / 2)
    }
}

/// Valuation at an extension place.
///
/// Shape `r sqrt(D)^eps` uses the closed formula. A mixed `u + v sqrt(D)`
/// takes the minimum of the two summands when they differ; when they tie
/// at a split place, the norm decides whether both sheets agree, and the
/// call fails otherwise because the sheets cannot be told apart.
pub fn ext_valuation(e: &QuadExtElement, w: &ExtensionPlace) -> Result<i64> {
    if e.is_zero() {
        return Err(Error::ZeroInput("extension valuation"));
    }
    splitting(&e.d, &w.below)?;
    if let Some((r, eps)) = e.pure_form() {
        return pure_valuation(r, eps, &e.d, w);
    }
    let a = pure_valuation(&e.u, 0, &e.d, w)?;
    let b = pure_valuation(&e.v, 1, &e.d, w)?;
    if a != b {
        return Ok(a.min(b));
    }
    // Only possible at split places (parities differ at ramified ones).
    let nv = valuation_nonzero(&e.norm(), &w.below)?;
    if nv == 2 * a {
        Ok(a)
    } else {
        Err(Error::SheetDependent(w.below.to_string()))
    }
}

/// `sum_{w | v} nu_w(e)` for a base bundle `v`, via the norm.
///
/// Holds for every nonzero element, mixed or not, and per complex place of
/// the bundle (multiply by the bundle degree for the full sum).
pub fn norm_valuation(e: &QuadExtElement, below: &PlaceBundle) -> Result<i64> {
    if e.is_zero() {
        return Err(Error::ZeroInput("extension valuation"));
    }
    splitting(&e.d, below)?;
    valuation_nonzero(&e.norm(), below)
}

/// Every extension place above the support of the given polynomials,
/// `D` and infinity, over a gcd-free basis refined against `D`.
pub fn places_above(d: &Polynomial, polys: &[Polynomial]) -> Result<Vec<ExtensionPlace>> {
    let mut gens = polys.to_vec();
    gens.push(d.clone());
    let mut out = Vec::new();
    for index in gcd_free_basis(&gens) {
        out.extend(extension_places(d, &PlaceBundle::Finite(index))?);
    }
    out.extend(extension_places(d, &PlaceBundle::Infinite)?);
    Ok(out)
}

/// Height in the extension's normalization, for `r sqrt(D)^eps`.
pub fn ext_height(e: &QuadExtElement) -> Result<u64> {
    if e.is_zero() {
        return Err(Error::ZeroInput("extension height"));
    }
    let (r, eps) = e.pure_form().ok_or(Error::NotPureElement)?;
    let places = places_above(&e.d, &[r.numer().clone(), r.denom().clone()])?;
    let mut total = 0i64;
    for w in &places {
        let v = pure_valuation(r, eps, &e.d, w)?;
        total -= v.min(0) * w.place_count() as i64;
    }
    Ok(total as u64)
}

/// Genus of `y^2 = D`.
pub fn genus(d: &Polynomial) -> Result<u64> {
    check_radicand(d)?;
    Ok((d.udeg() as u64 - 1) / 2)
}
