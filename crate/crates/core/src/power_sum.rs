//! Polynomial power sums `G_n = f_1 a_1^n + ... + f_k a_k^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{is_square_in_closure, Degree, Extension, Polynomial, RationalFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSum {
    coeffs: Vec<RationalFunction>,
    roots: Vec<Polynomial>,
}

/// Constants that depend on the sequence and on the shift polynomial `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceConstants {
    /// Smallest index from which the degree law holds.
    pub n0: u64,
    /// `min(deg f_1 - deg f_i, deg f_1 - deg p)`; 0 when the minimum is empty.
    pub c7: i64,
    /// `deg a_1 / (1 + deg a_1)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub kappa: BigRational,
    pub deg_f1: i64,
    pub deg_alpha1: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub order: usize,
    pub root_degrees: Vec<i64>,
    pub dominant_root: bool,
    pub dominant_root_detail: String,
    /// Number of roots attaining the maximal degree.
    pub top_degree_ties: usize,
    pub f1_is_square: bool,
    pub f1_alpha1_is_square: bool,
    pub pass: bool,
}

impl HypothesisReport {
    /// Names of the failed hypotheses.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.dominant_root {
            out.push("no_dominant_root");
        }
        if self.f1_is_square {
            out.push("f1_is_square");
        }
        if self.f1_alpha1_is_square {
            out.push("f1_alpha1_is_square");
        }
        out
    }
}

fn deg(f: &RationalFunction) -> i64 {
    f.degree().expect_finite()
}

impl PowerSum {
    pub fn new(coeffs: Vec<RationalFunction>, roots: Vec<Polynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput("power sum terms"));
        }
        if coeffs.len() != roots.len() {
            return Err(Error::InvalidIndices(format!(
                "{} coefficients but {} roots",
                coeffs.len(),
                roots.len()
            )));
        }
        if coeffs.iter().any(RationalFunction::is_zero) {
            return Err(Error::ZeroInput("power sum coefficient"));
        }
        if roots.iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroInput("power sum root"));
        }
        let mut ext = Extension::Rational;
        for e in coeffs.iter().map(|c| c.extension()).chain(roots.iter().map(|r| r.extension())) {
            ext = ext.join(e).ok_or_else(|| {
                Error::HypothesesFail("terms live in incompatible coefficient fields".into())
            })?;
        }
        Ok(PowerSum { coeffs, roots })
    }

    /// Merges like roots and drops vanishing terms; may return zero terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (RationalFunction, Polynomial)>) -> Self {
        let mut coeffs: Vec<RationalFunction> = Vec::new();
        let mut roots: Vec<Polynomial> = Vec::new();
        for (c, r) in terms {
            match roots.iter().position(|q| *q == r) {
                Some(i) => coeffs[i] = &coeffs[i] + &c,
                None => {
                    coeffs.push(c);
                    roots.push(r);
                }
            }
        }
        let (coeffs, roots) = coeffs
            .into_iter()
            .zip(roots)
            .filter(|(c, _)| !c.is_zero())
            .unzip();
        PowerSum { coeffs, roots }
    }

    /// The constant sequence `c * 1^n`.
    pub fn constant(c: RationalFunction) -> Self {
        Self::from_terms([(c, Polynomial::one())])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn roots(&self) -> &[Polynomial] {
        &self.roots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalFunction, &Polynomial)> {
        self.coeffs.iter().zip(&self.roots)
    }

    pub fn extension(&self) -> Extension {
        self.terms().fold(Extension::Rational, |e, (c, r)| {
            e.join(c.extension())
                .and_then(|e| e.join(r.extension()))
                .expect("checked on construction")
        })
    }

    pub fn evaluate(&self, n: u64) -> RationalFunction {
        let e = u32::try_from(n).expect("index too large");
        self.terms().fold(RationalFunction::zero(), |acc, (c, r)| {
            &acc + &(c * &RationalFunction::from_poly(r.pow(e)))
        })
    }

    /// `G_n` as a polynomial, when it is one.
    pub fn evaluate_polynomial(&self, n: u64) -> Option<Polynomial> {
        self.evaluate(n).to_polynomial()
    }

    pub fn add(&self, other: &PowerSum) -> PowerSum {
        Self::from_terms(self.terms().chain(other.terms()).map(|(c, r)| (c.clone(), r.clone())))
    }

    /// Termwise product: coefficients `f_i g_j`, roots `a_i b_j`, like roots merged.
    pub fn product(&self, other: &PowerSum) -> PowerSum {
        Self::from_terms(self.terms().flat_map(|(c, r)| {
            other.terms().map(move |(d, s)| (c * d, r * s))
        }))
    }

    fn root_degrees(&self) -> Vec<i64> {
        self.roots.iter().map(|r| r.udeg() as i64).collect()
    }

    /// The chain `deg a_1 > deg a_2 > deg a_3 >= ... >= deg a_k` read in the
    /// given order, with `deg a_2 > 0` when `k = 2`.
    fn dominant_chain(&self) -> (bool, String) {
        let d = self.root_degrees();
        match d.len() {
            0 | 1 => (false, format!("order {} < 2", d.len())),
            2 => {
                let ok = d[0] > d[1] && d[1] > 0;
                (ok, format!("k=2: {} > {} > 0", d[0], d[1]))
            }
            _ => {
                let ok = d[0] > d[1] && d[1] > d[2] && d[2..].windows(2).all(|w| w[0] >= w[1]);
                let tail: Vec<String> = d[2..].iter().map(i64::to_string).collect();
                (ok, format!("{} > {} > {}", d[0], d[1], tail.join(" >= ")))
            }
        }
    }

    pub fn check_hypotheses(&self) -> HypothesisReport {
        let degrees = self.root_degrees();
        let top = degrees.iter().copied().max().unwrap_or(0);
        let ties = degrees.iter().filter(|&&d| d == top).count();
        let (dominant, detail) = self.dominant_chain();
        let (f1_sq, f1a1_sq) = match (self.coeffs.first(), self.roots.first()) {
            (Some(f1), Some(a1)) => {
                let f1a1 = f1 * &RationalFunction::from_poly(a1.clone());
                (
                    is_square_in_closure(f1).expect("nonzero"),
                    is_square_in_closure(&f1a1).expect("nonzero"),
                )
            }
            _ => (true, true),
        };
        HypothesisReport {
            order: self.order(),
            root_degrees: degrees,
            dominant_root: dominant,
            dominant_root_detail: detail,
            top_degree_ties: ties,
            f1_is_square: f1_sq,
            f1_alpha1_is_square: f1a1_sq,
            pass: dominant && !f1_sq && !f1a1_sq,
        }
    }

    /// `n0`, `C7` and `kappa` for the shift `p`.
    ///
    /// Needs `deg a_1 > deg a_i` for every `i >= 2`, and `deg a_1 >= 1`.
    pub fn constants(&self, p: &Polynomial) -> Result<SequenceConstants> {
        let degrees = self.root_degrees();
        let Some(&d1) = degrees.first() else {
            return Err(Error::NoDominantRoot("empty sequence".into()));
        };
        if d1 < 1 || degrees[1..].iter().any(|&d| d >= d1) {
            return Err(Error::NoDominantRoot(format!("root degrees {degrees:?}")));
        }
        let f1 = deg(&self.coeffs[0]);
        // (deg of the competitor, deg of its root) for every competitor.
        let mut rivals: Vec<(i64, i64)> = self.coeffs[1..]
            .iter()
            .map(deg)
            .zip(degrees[1..].iter().copied())
            .collect();
        if let Degree::Finite(dp) = p.degree() {
            rivals.push((dp, 0));
        }
        // f1 + n d1 > df + n d  <=>  n > (df - f1) / (d1 - d)
        let n0 = rivals
            .iter()
            .map(|&(df, d)| ((df - f1).div_euclid(d1 - d) + 1).max(0))
            .max()
            .unwrap_or(0) as u64;
        let c7 = rivals.iter().map(|&(df, _)| f1 - df).min().unwrap_or(0);
        Ok(SequenceConstants {
            n0,
            c7,
            kappa: BigRational::new(BigInt::from(d1), BigInt::from(1 + d1)),
            deg_f1: f1,
            deg_alpha1: d1,
        })
    }

    /// `deg f_1 + n deg a_1`, checked against the actual degree of `G_n`.
    pub fn degree_law(&self, n: u64, p: &Polynomial) -> Result<i64> {
        let k = self.constants(p)?;
        if n < k.n0 {
            return Err(Error::BelowThreshold { n, n0: k.n0 });
        }
        let law = k.deg_f1 + n as i64 * k.deg_alpha1;
        let actual = self.evaluate(n).degree();
        if actual != Degree::Finite(law) {
            return Err(Error::DegreeLawViolated {
                n,
                law,
                actual: actual.to_string(),
            });
        }
        Ok(law)
    }

    /// The index `n` with `G_n = h`, if any.
    pub fn membership(&self, h: &Polynomial, p: &Polynomial) -> Result<Option<u64>> {
        let k = self.constants(p)?;
        let target = RationalFunction::from_poly(h.clone());
        for n in 0..k.n0 {
            if self.evaluate(n) == target {
                return Ok(Some(n));
            }
        }
        if let Degree::Finite(dh) = h.degree() {
            let gap = dh - k.deg_f1;
            if gap >= 0 && gap % k.deg_alpha1 == 0 {
                let n = (gap / k.deg_alpha1) as u64;
                if n >= k.n0 && self.evaluate(n) == target {
                    return Ok(Some(n));
                }
            }
        }
        Ok(None)
    }
}

/// `G_n = X (X^2)^n + X^n`, the smallest sequence meeting every hypothesis.
pub fn reference_sequence() -> PowerSum {
    PowerSum::new(
        vec![
            RationalFunction::from_poly(Polynomial::x()),
            RationalFunction::one(),
        ],
        vec![Polynomial::from_ints(&[0, 0, 1]), Polynomial::x()],
    )
    .expect("valid")
}
