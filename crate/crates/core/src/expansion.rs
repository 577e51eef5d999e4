//! Formal expansion of `sqrt(G_n - p)` around its dominant term.
//!
//! `G_n - p = f_1 a_1^n (1 + u_1 + ... + u_k)` with `u_1 = -p / (f_1 a_1^n)`
//! and `u_i = (f_i / f_1)(a_i / a_1)^n`, and
//! `sqrt(1 + sum u_i) = sum_h gamma(h) prod u_i^{h_i}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::algebra::{FieldElement, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::function_field::{valuation, PlaceBundle, Valuation};
use crate::power_sum::{PowerSum, SequenceConstants};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All indices of length `k` and the given total, in descending
/// lexicographic order, so `(1,0)` precedes `(0,1)`.
pub fn indices_of_total(k: usize, total: u32) -> Vec<MultiIndex> {
    fn rec(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == k {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=left).rev() {
            prefix.push(first);
            rec(k, left - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, total, &mut Vec::with_capacity(k), &mut out);
    } else if total == 0 {
        out.push(MultiIndex(Vec::new()));
    }
    out
}

/// Graded enumeration of every index with total below `j`.
pub fn indices_below(k: usize, j: u32) -> Vec<MultiIndex> {
    (0..j).flat_map(|t| indices_of_total(k, t)).collect()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `binom(1/2, m) m! / prod h_i!` with `m = total(h)`.
pub fn gamma(h: &MultiIndex) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    let falling = (0..h.total()).fold(BigRational::one(), |acc, i| {
        acc * (&half - BigRational::from(BigInt::from(i)))
    });
    let denom = h.0.iter().fold(BigInt::one(), |acc, &hi| acc * factorial(hi));
    falling / BigRational::from(denom)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTerm {
    pub index: MultiIndex,
    pub value: RationalFunction,
    pub certified_bound: i64,
    pub valuation: Valuation,
}

/// Shared data for every term at a fixed `n`.
pub struct Expansion {
    constants: SequenceConstants,
    n: u64,
    u: Vec<RationalFunction>,
    f1: RationalFunction,
    alpha1_n: Polynomial,
}

impl Expansion {
    pub fn new(seq: &PowerSum, p: &Polynomial, n: u64) -> Result<Self> {
        let exp = Self::without_shift_check(seq, p, n)?;
        if exp.shift() <= 0 {
            return Err(Error::NonPositiveShift(exp.shift()));
        }
        Ok(exp)
    }

    /// Like [`Expansion::new`] but accepts `n + C7 <= 0`, where the
    /// certified bounds are still valid, just not increasing in `h`.
    pub fn without_shift_check(seq: &PowerSum, p: &Polynomial, n: u64) -> Result<Self> {
        let constants = seq.constants(p)?;
        if n < constants.n0 {
            return Err(Error::BelowThreshold { n, n0: constants.n0 });
        }
        let e = u32::try_from(n).expect("index too large");
        let f1 = seq.coeffs()[0].clone();
        let alpha1_n = seq.roots()[0].pow(e);
        let lead = &f1 * &RationalFunction::from_poly(alpha1_n.clone());
        let mut u = vec![&(-RationalFunction::from_poly(p.clone())) / &lead];
        for (fi, ai) in seq.terms().skip(1) {
            u.push(fi * &RationalFunction::from_poly(ai.pow(e)) / &lead);
        }
        Ok(Expansion {
            constants,
            n,
            u,
            f1,
            alpha1_n,
        })
    }

    pub fn constants(&self) -> &SequenceConstants {
        &self.constants
    }

    /// Number of summands `k` (one `u` per multi-index slot).
    pub fn width(&self) -> usize {
        self.u.len()
    }

    /// `n + C7`.
    pub fn shift(&self) -> i64 {
        self.n as i64 + self.constants.c7
    }

    pub fn term(&self, h: &MultiIndex) -> Result<SeriesTerm> {
        if h.len() != self.u.len() {
            return Err(Error::InvalidIndices(format!(
                "multi-index of length {} for {} summands",
                h.len(),
                self.u.len()
            )));
        }
        let mut value = RationalFunction::constant(FieldElement::from(gamma(h)));
        for (ui, &hi) in self.u.iter().zip(&h.0) {
            if hi > 0 {
                value = &value * &ui.pow(hi as i64)?;
            }
        }
        let bound = h.total() as i64 * self.shift();
        let v = valuation(&value, &PlaceBundle::Infinite)?;
        if v < Valuation::Finite(bound) {
            return Err(Error::CertificationFailed(format!(
                "term {h} has valuation {v} below {bound}"
            )));
        }
        Ok(SeriesTerm {
            index: h.clone(),
            value,
            certified_bound: bound,
            valuation: v,
        })
    }

    /// Every term with `total(h) < j`.
    pub fn head(&self, j: u32) -> Result<Vec<SeriesTerm>> {
        indices_below(self.width(), j).iter().map(|h| self.term(h)).collect()
    }

    /// `f_1 a_1^n`.
    pub fn leading_factor(&self) -> RationalFunction {
        &self.f1 * &RationalFunction::from_poly(self.alpha1_n.clone())
    }
}

pub fn term(seq: &PowerSum, p: &Polynomial, n: u64, h: &MultiIndex) -> Result<SeriesTerm> {
    Expansion::new(seq, p, n)?.term(h)
}

#[derive(Debug, Clone)]
pub struct Truncation {
    pub sum: RationalFunction,
    pub terms: Vec<SeriesTerm>,
}

impl Truncation {
    /// Number of head terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `S_J = sum_{total(h) < J} t_h`.
pub fn truncated_sum(seq: &PowerSum, p: &Polynomial, n: u64, j: u32) -> Result<Truncation> {
    if j == 0 {
        return Err(Error::InvalidIndices("J must be positive".into()));
    }
    let terms = Expansion::new(seq, p, n)?.head(j)?;
    let sum = terms
        .iter()
        .fold(RationalFunction::zero(), |acc, t| &acc + &t.value);
    Ok(Truncation { sum, terms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareCertificate {
    pub n: u64,
    pub j: u32,
    /// `nu_inf(f_1 a_1^n S_J^2 - (G_n - p))`.
    pub valuation: Valuation,
    /// `J (n + C7) - deg f_1 - n deg a_1`.
    pub bound: i64,
    pub pass: bool,
}

/// Checks the truncated expansion in squared form.
pub fn certify_square(seq: &PowerSum, p: &Polynomial, n: u64, j: u32) -> Result<SquareCertificate> {
    let exp = Expansion::new(seq, p, n)?;
    let trunc = truncated_sum(seq, p, n, j)?;
    let target = &seq.evaluate(n) - &RationalFunction::from_poly(p.clone());
    let delta = &(&exp.leading_factor() * &(&trunc.sum * &trunc.sum)) - &target;
    let v = valuation(&delta, &PlaceBundle::Infinite)?;
    let k = exp.constants();
    let bound = j as i64 * exp.shift() - k.deg_f1 - n as i64 * k.deg_alpha1;
    Ok(SquareCertificate {
        n,
        j,
        valuation: v,
        bound,
        pass: v >= Valuation::Finite(bound),
    })
}
