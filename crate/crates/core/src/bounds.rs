//! Quantitative steps of the finiteness argument, checked on instances:
//! the fixed-`x` identity, the gcd and growth bounds with explicit
//! constants, the `phi`-system, the function-field subspace inequality
//! and the final linear-dependence test.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    gcd_free_basis, linalg, split_square, squarefree_part, Degree, FieldElement, Polynomial,
    RationalFunction,
};
use crate::error::{Error, Result};
use crate::expansion::{indices_below, Expansion, MultiIndex};
use crate::function_field::{
    ext_height, extension_places, genus, places_above, pure_valuation, splitting, valuation_nonzero,
    ExtensionPlace, PlaceBundle, QuadExtElement, Splitting,
};
use crate::io::rational_to_string;
use crate::power_sum::{PowerSum, SequenceConstants};
use crate::search::{verify_triple, TripleSolution};

/// `b G_y - a G_z = (b - a) p`.
pub fn fixed_x_identity(
    a: &Polynomial,
    b: &Polynomial,
    gy: &Polynomial,
    gz: &Polynomial,
    p: &Polynomial,
) -> bool {
    &(b * gy) - &(a * gz) == &(b - a) * p
}

fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn rdeg(f: &RationalFunction) -> i64 {
    f.degree().expect_finite()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub value: String,
    pub derivation: String,
}

/// Explicit values for the constants of the argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantLedger {
    pub sequence: SequenceConstants,
    pub kappa: BigRational,
    pub c2: BigRational,
    pub c3: BigRational,
    pub c4: BigRational,
    pub c5: BigRational,
    pub c6: BigRational,
    pub c9: BigRational,
    pub c11: BigRational,
    /// `1 + C11 deg a_1 / C6`, possibly fractional.
    pub j: BigRational,
    c3_note: String,
}

impl ConstantLedger {
    /// Builds the ledger for `seq` and shift `p`; needs a dominant root.
    pub fn new(seq: &PowerSum, p: &Polynomial) -> Result<Self> {
        let sequence = seq.constants(p)?;
        let d1 = q(sequence.deg_alpha1);
        let kappa = sequence.kappa.clone();
        let c2 = q(sequence.deg_f1);
        let mut rivals: Vec<(String, i64)> = seq.coeffs()[1..]
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("deg f_{}", i + 2), rdeg(f)))
            .collect();
        if let Degree::Finite(dp) = p.degree() {
            rivals.push(("deg p".into(), dp));
        }
        let (c3, c3_note) = match rivals.iter().max_by_key(|(_, d)| *d) {
            Some((_, d)) => {
                let names: Vec<&str> = rivals.iter().map(|(n, _)| n.as_str()).collect();
                (q(*d), format!("max({})", names.join(", ")))
            }
            None => (q(0), "0 (no competitor and p = 0)".into()),
        };
        let c4 = c2.clone().max(c3.clone());
        let c5 = &c4 / &d1;
        let c6 = (q(1) - &kappa) / q(2);
        let c9 = q(2);
        let c11 = q(3);
        let j = q(1) + &c11 * &d1 / &c6;
        Ok(ConstantLedger {
            sequence,
            kappa,
            c2,
            c3,
            c4,
            c5,
            c6,
            c9,
            c11,
            j,
            c3_note,
        })
    }

    /// Smallest integer at least `J`, the truncation order actually used.
    pub fn j_ceil(&self) -> u32 {
        let c = self.j.ceil().to_integer();
        u32::try_from(c).expect("J fits in u32")
    }

    pub fn entries(&self) -> Vec<LedgerEntry> {
        let e = |name, v: &BigRational, derivation: String| LedgerEntry {
            name,
            value: rational_to_string(v),
            derivation,
        };
        let s = &self.sequence;
        vec![
            e("n0", &q(s.n0 as i64), "least n with deg f_1 + n deg a_1 above every competing degree".into()),
            e("C7", &q(s.c7), "min over competitors of deg f_1 - deg f_i (and deg f_1 - deg p)".into()),
            e("kappa", &self.kappa, "deg a_1 / (1 + deg a_1)".into()),
            e("C2", &self.c2, "deg f_1".into()),
            e("C3", &self.c3, self.c3_note.clone()),
            e("C4", &self.c4, "max(C2, C3)".into()),
            e("C5", &self.c5, "C4 / deg a_1".into()),
            e("C6", &self.c6, "(1 - kappa) / 2".into()),
            e("C9", &self.c9, "valuation scale of the quadratic extension".into()),
            e("C11", &self.c11, "3 (three square-root factors in abc)".into()),
            e("J", &self.j, "1 + C11 deg a_1 / C6".into()),
        ]
    }

    pub fn to_json(&self) -> Value {
        json!({ "entries": self.entries(), "j_used": self.j_ceil() })
    }
}

/// Constants that depend on a particular triple or `phi`-system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceConstants {
    /// `max(deg a, deg b) + max_i(deg f_i - deg f_1, deg p - deg f_1)`.
    pub c0: i64,
    /// `C0 + (z - y) deg a_2`.
    pub c1: i64,
    /// `binom(n, 2)(|S| + 2g - 2) + sum_{j >= 1} H(phi_j)`.
    pub c8: Option<i64>,
    /// `C8 + 3 deg f_1`.
    pub c10: Option<i64>,
}

pub fn instance_constants(
    seq: &PowerSum,
    p: &Polynomial,
    sol: &TripleSolution,
    report: Option<&SubspaceReport>,
) -> InstanceConstants {
    let df1 = rdeg(&seq.coeffs()[0]);
    let mut gap = seq.coeffs()[1..].iter().map(|f| rdeg(f) - df1).max();
    if let Degree::Finite(dp) = p.degree() {
        gap = Some(gap.map_or(dp - df1, |g| g.max(dp - df1)));
    }
    let da = sol.a.degree().finite().unwrap_or(0);
    let db = sol.b.degree().finite().unwrap_or(0);
    let c0 = da.max(db) + gap.unwrap_or(0);
    let d2 = seq.roots().get(1).map_or(0, |r| r.udeg() as i64);
    let c1 = c0 + (sol.z as i64 - sol.y as i64) * d2;
    let c8 = report.map(|r| r.first_term + r.heights.iter().skip(1).sum::<u64>() as i64);
    InstanceConstants {
        c0,
        c1,
        c8,
        c10: c8.map(|c| c + 3 * df1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcdBound {
    pub g: String,
    pub deg_g: i64,
    /// 1 when `y <= kappa z`, else 2.
    pub case: u8,
    /// `C2 + kappa z deg a_1` or `C3 + z (deg a_1 - kappa)`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub case_bound: BigRational,
    /// `C4 + z kappa deg a_1`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub bound: BigRational,
    pub pass: bool,
}

/// `deg gcd(G_y - p, G_z - p)` against its bound.
///
/// Refuses sequences that fail the hypotheses.
pub fn gcd_bound(seq: &PowerSum, p: &Polynomial, y: u64, z: u64) -> Result<(Polynomial, GcdBound)> {
    let hyp = seq.check_hypotheses();
    if !hyp.pass {
        return Err(Error::HypothesesFail(hyp.failures().join(", ")));
    }
    let ledger = ConstantLedger::new(seq, p)?;
    let n0 = ledger.sequence.n0;
    if y >= z {
        return Err(Error::InvalidIndices(format!("need y < z, got ({y}, {z})")));
    }
    if y < n0 {
        return Err(Error::BelowThreshold { n: y, n0 });
    }
    let shifted = |n: u64| -> Result<Polynomial> {
        Ok(&seq.evaluate_polynomial(n).ok_or(Error::NonPolynomialValue(n))? - p)
    };
    let g = shifted(y)?.gcd(&shifted(z)?)?;
    let d1 = q(ledger.sequence.deg_alpha1);
    let zq = q(z as i64);
    let kappa = &ledger.kappa;
    let case = if q(y as i64) <= kappa * &zq { 1 } else { 2 };
    let case_bound = if case == 1 {
        &ledger.c2 + kappa * &zq * &d1
    } else {
        &ledger.c3 + &zq * (&d1 - kappa)
    };
    let bound = &ledger.c4 + &zq * kappa * &d1;
    let deg_g = g.degree().expect_finite();
    let pass = q(deg_g) <= bound;
    let report = GcdBound {
        g: g.to_string(),
        deg_g,
        case,
        case_bound,
        bound,
        pass,
    };
    Ok((g, report))
}

/// `x >= (1 - kappa) z - C5`.
pub fn growth_check(ledger: &ConstantLedger, x: u64, z: u64) -> bool {
    q(x as i64) >= (q(1) - &ledger.kappa) * q(z as i64) - &ledger.c5
}

/// A constant-coefficient relation among extension elements, if any.
///
/// Elements are written over a common denominator as `U + V sqrt(D)`;
/// the coefficients of `U` and `V` form the columns of a matrix whose
/// kernel gives the relation.
pub fn linear_dependence(elements: &[QuadExtElement]) -> Result<Option<Vec<FieldElement>>> {
    let first = elements.first().ok_or(Error::EmptyInput("linear dependence"))?;
    let d = first.radicand();
    if elements.iter().any(|e| e.radicand() != d) {
        return Err(Error::RadicandMismatch);
    }
    let mut common = Polynomial::one();
    for e in elements {
        for part in [e.base_part(), e.radical_part()] {
            let den = part.denom();
            let g = common.gcd(den)?;
            common = &common * &den.exact_div(&g)?;
        }
    }
    let lift = |f: &RationalFunction| (f.numer() * &common).exact_div(f.denom());
    let mut columns = Vec::with_capacity(elements.len());
    for e in elements {
        columns.push((lift(e.base_part())?, lift(e.radical_part())?));
    }
    let width = columns
        .iter()
        .map(|(u, v)| u.coeffs().len().max(v.coeffs().len()))
        .max()
        .unwrap_or(0);
    let mut rows = vec![Vec::with_capacity(elements.len()); 2 * width];
    for (u, v) in &columns {
        for i in 0..width {
            rows[i].push(u.coeff(i));
            rows[width + i].push(v.coeff(i));
        }
    }
    Ok(linalg::kernel_vector(&rows, elements.len()))
}

/// The elements of the proof for one index triple.
#[derive(Debug, Clone)]
pub struct PhiSystem {
    pub radicand: Polynomial,
    /// `(x + y + z) mod 2`.
    pub parity: u8,
    pub j: u32,
    /// Set when the square root of the leading unit of `f_1` (or
    /// `f_1 a_1`) lies outside the coefficient field and was left out.
    /// The left-out factor is a nonzero constant.
    pub unit_dropped: bool,
    /// Coefficient of `sqrt(D)` in `f_1^{3/2} a_1^{(x+y+z)/2}`.
    pub prefactor: RationalFunction,
    /// Multi-indices `(h_x, h_y, h_z)` behind each `phi_j`, `j >= 1`.
    pub labels: Vec<[MultiIndex; 3]>,
    /// `phi_1, ..., phi_L`.
    pub phis: Vec<QuadExtElement>,
    /// `phi_0 = abc` when a triple was supplied.
    pub phi0: Option<QuadExtElement>,
}

impl PhiSystem {
    /// `phi_0` (if present) followed by `phi_1, ..., phi_L`.
    pub fn elements(&self) -> Vec<QuadExtElement> {
        self.phi0.iter().chain(&self.phis).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.phis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phis.is_empty()
    }

    pub fn sigma(&self) -> Result<QuadExtElement> {
        let mut acc = QuadExtElement::zero(self.radicand.clone())?;
        for e in self.elements() {
            acc = acc.add(&e)?;
        }
        Ok(acc)
    }

    /// Merges dependent `phi_j` (`j >= 1`) into an independent subset.
    ///
    /// The first element of every maximal independent prefix is kept;
    /// a dependent element is written in terms of the kept ones and its
    /// coefficients are added to theirs. Kept elements whose merged
    /// coefficient vanishes are removed. `sigma` is unchanged.
    pub fn grouped(&self) -> Result<PhiSystem> {
        let mut basis: Vec<QuadExtElement> = Vec::new();
        let mut labels: Vec<[MultiIndex; 3]> = Vec::new();
        let mut weights: Vec<FieldElement> = Vec::new();
        for (phi, label) in self.phis.iter().zip(&self.labels) {
            let mut trial = basis.clone();
            trial.push(phi.clone());
            match linear_dependence(&trial)? {
                None => {
                    basis.push(phi.clone());
                    labels.push(label.clone());
                    weights.push(FieldElement::one());
                }
                Some(rel) => {
                    // rel_last phi + sum rel_b basis_b = 0
                    let last = rel.last().expect("nonempty").clone();
                    for (w, rb) in weights.iter_mut().zip(&rel) {
                        *w = &*w - &(rb / &last);
                    }
                }
            }
        }
        let mut phis = Vec::new();
        let mut kept = Vec::new();
        for ((b, l), w) in basis.into_iter().zip(labels).zip(weights) {
            if !w.is_zero() {
                let scaled = QuadExtElement::new(
                    b.base_part().scale(&w),
                    b.radical_part().scale(&w),
                    b.radicand().clone(),
                )?;
                phis.push(scaled);
                kept.push(l);
            }
        }
        Ok(PhiSystem {
            labels: kept,
            phis,
            ..self.clone()
        })
    }
}

/// Builds `phi_j = -f_1^{3/2} a_1^{(x+y+z)/2} t_j` for every product of
/// expansion terms of combined total below `j`, with zero products left
/// out, and `phi_0 = abc` from a verified triple when one is given.
pub fn build_phi_system(
    seq: &PowerSum,
    p: &Polynomial,
    (x, y, z): (u64, u64, u64),
    j: u32,
    triple: Option<&TripleSolution>,
) -> Result<PhiSystem> {
    let hyp = seq.check_hypotheses();
    if !hyp.pass {
        return Err(Error::HypothesesFail(hyp.failures().join(", ")));
    }
    if j == 0 {
        return Err(Error::InvalidIndices("J must be positive".into()));
    }
    let f1 = &seq.coeffs()[0];
    let alpha1 = &seq.roots()[0];
    let s = x + y + z;
    let parity = (s % 2) as u8;
    let under_root = if parity == 0 {
        f1.clone()
    } else {
        f1 * &RationalFunction::from_poly(alpha1.clone())
    };
    let split = split_square(&under_root)?;
    let field = seq.extension().join(p.extension()).ok_or(Error::RadicandMismatch)?;
    let unit_root = split
        .unit
        .sqrt_within(field)
        .filter(|r| field.join(r.extension()).is_some());
    let power = u32::try_from(s / 2).map_err(|_| Error::InvalidIndices("index sum too large".into()))?;
    let mut prefactor = f1 * &RationalFunction::from_poly(alpha1.pow(power));
    prefactor = &prefactor * &split.root;
    if let Some(r) = &unit_root {
        prefactor = prefactor.scale(r);
    }
    let d = split.radicand.clone();

    let phi0 = match triple {
        None => None,
        Some(sol) => {
            if sol.indices() != (x, y, z) || !verify_triple(sol, seq, p) {
                return Err(Error::InvalidIndices(format!(
                    "no verified triple at ({x}, {y}, {z})"
                )));
            }
            let abc = &(&sol.a * &sol.b) * &sol.c;
            Some(QuadExtElement::base(RationalFunction::from_poly(abc), d.clone())?)
        }
    };

    let expansions = [
        Expansion::without_shift_check(seq, p, x)?,
        Expansion::without_shift_check(seq, p, y)?,
        Expansion::without_shift_check(seq, p, z)?,
    ];
    let k = expansions[0].width();
    // Terms of each expansion by total, computed once.
    let heads: Vec<Vec<(MultiIndex, RationalFunction)>> = expansions
        .iter()
        .map(|e| {
            indices_below(k, j)
                .into_iter()
                .map(|h| e.term(&h).map(|t| (h, t.value)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let neg_pref = -prefactor.clone();
    let mut labels = Vec::new();
    let mut phis = Vec::new();
    for (hx, tx) in &heads[0] {
        for (hy, ty) in &heads[1] {
            if hx.total() + hy.total() >= j {
                continue;
            }
            for (hz, tz) in &heads[2] {
                if hx.total() + hy.total() + hz.total() >= j {
                    continue;
                }
                let t = &(tx * ty) * tz;
                if t.is_zero() {
                    continue;
                }
                phis.push(QuadExtElement::radical(&neg_pref * &t, d.clone())?);
                labels.push([hx.clone(), hy.clone(), hz.clone()]);
            }
        }
    }
    Ok(PhiSystem {
        radicand: d,
        parity,
        j,
        unit_dropped: unit_root.is_none(),
        prefactor,
        labels,
        phis,
        phi0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceReport {
    pub n: usize,
    pub r: usize,
    /// Number of complex places in `S`.
    pub s_size: i64,
    pub genus: u64,
    /// `H(phi_i)` for every element.
    pub heights: Vec<u64>,
    /// `binom(n, 2)(|S| + 2g - 2)`.
    pub first_term: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// Squarefree polynomial whose zeros are the finite places where a pure
/// element has positive (`zeros`) or negative valuation.
fn finite_locus(r: &RationalFunction, eps: u8, d: &Polynomial, zeros: bool) -> Result<Polynomial> {
    if zeros {
        let mut n = r.numer().clone();
        if eps == 1 {
            n = &n * d;
        }
        if n.is_constant() {
            return Ok(Polynomial::one());
        }
        squarefree_part(&n)
    } else if r.denom().is_constant() {
        Ok(Polynomial::one())
    } else {
        squarefree_part(r.denom())
    }
}

fn covered(locus: &Polynomial, bundles: &[Polynomial]) -> Option<Polynomial> {
    if locus.is_constant() {
        return None;
    }
    let mut gens = bundles.to_vec();
    gens.push(locus.clone());
    gcd_free_basis(&gens)
        .into_iter()
        .find(|piece| piece.divides(locus) && !bundles.iter().any(|b| piece.divides(b)))
}

/// Checks `sum_{w in S}(nu_w(sigma) - min_i nu_w(phi_i))
/// <= binom(n, 2)(|S| + 2g - 2) + sum_{i > r} H(phi_i)` with
/// `sigma = sum phi_i`.
///
/// The elements must be pure (`r_i sqrt(D)^eps_i`) and linearly
/// independent. `S` must contain every pole of every `phi_i`, every zero
/// of `phi_1, ..., phi_r`, and both sheets above each split bundle it
/// meets. Overlapping bundles in `S` are counted once.
pub fn subspace_verify(phis: &[QuadExtElement], s: &[ExtensionPlace], r: usize) -> Result<SubspaceReport> {
    let first = phis.first().ok_or(Error::EmptyInput("subspace inequality"))?;
    let d = first.radicand().clone();
    if phis.iter().any(|e| e.radicand() != &d) {
        return Err(Error::RadicandMismatch);
    }
    if r > phis.len() {
        return Err(Error::InvalidIndices(format!("r = {r} exceeds n = {}", phis.len())));
    }
    let mut pure = Vec::with_capacity(phis.len());
    for e in phis {
        if e.is_zero() {
            return Err(Error::ZeroInput("subspace inequality"));
        }
        let (ri, eps) = e.pure_form().ok_or(Error::NotPureElement)?;
        pure.push((ri.clone(), eps));
    }
    if linear_dependence(phis)?.is_some() {
        return Err(Error::LinearlyDependent);
    }

    // Shape of S.
    let mut bundles: Vec<Polynomial> = Vec::new();
    let mut has_infinity = false;
    for w in s {
        let kind = splitting(&d, &w.below)?;
        if kind == Splitting::Split {
            let twin = s.iter().any(|o| o.below == w.below && o.sheet != w.sheet);
            if !twin {
                return Err(Error::MissingPlace {
                    kind: "conjugate sheet".into(),
                    place: w.to_string(),
                });
            }
        }
        match &w.below {
            PlaceBundle::Infinite => has_infinity = true,
            PlaceBundle::Finite(b) => {
                if !bundles.contains(b) {
                    bundles.push(b.clone());
                }
            }
        }
    }
    let inf_places = extension_places(&d, &PlaceBundle::Infinite)?;
    for (i, (ri, eps)) in pure.iter().enumerate() {
        let mut kinds = vec![("pole", false)];
        if i < r {
            kinds.push(("zero", true));
        }
        for (kind, zeros) in kinds {
            let locus = finite_locus(ri, *eps, &d, zeros)?;
            if let Some(piece) = covered(&locus, &bundles) {
                return Err(Error::MissingPlace {
                    kind: format!("{kind} of element {}", i + 1),
                    place: piece.to_string(),
                });
            }
            let v = pure_valuation(ri, *eps, &d, &inf_places[0])?;
            if !has_infinity && ((zeros && v > 0) || (!zeros && v < 0)) {
                return Err(Error::MissingPlace {
                    kind: format!("{kind} of element {}", i + 1),
                    place: PlaceBundle::Infinite.to_string(),
                });
            }
        }
    }

    // Refine S so that every function involved has uniform data per piece.
    let sigma = phis
        .iter()
        .skip(1)
        .try_fold(first.clone(), |acc, e| acc.add(e))?;
    let norm = sigma.norm();
    let mut gens = bundles.clone();
    gens.extend([norm.numer().clone(), norm.denom().clone(), d.clone()]);
    for (ri, _) in &pure {
        gens.extend([ri.numer().clone(), ri.denom().clone()]);
    }
    let mut pieces: Vec<PlaceBundle> = gcd_free_basis(&gens)
        .into_iter()
        .filter(|piece| bundles.iter().any(|b| piece.divides(b)))
        .map(PlaceBundle::Finite)
        .collect();
    if has_infinity {
        pieces.push(PlaceBundle::Infinite);
    }

    let mut lhs = 0i64;
    let mut s_size = 0i64;
    for v in &pieces {
        let above = extension_places(&d, v)?;
        let weight = v.bundle_degree() as i64;
        let count = above.len() as i64;
        let mut min = i64::MAX;
        for (ri, eps) in &pure {
            min = min.min(pure_valuation(ri, *eps, &d, &above[0])?);
        }
        let sum_sigma = valuation_nonzero(&norm, v)?;
        lhs += weight * (sum_sigma - count * min);
        s_size += weight * count;
    }

    let g = genus(&d)?;
    let heights = phis.iter().map(ext_height).collect::<Result<Vec<_>>>()?;
    let n = phis.len() as i64;
    let first_term = n * (n - 1) / 2 * (s_size + 2 * g as i64 - 2);
    let rhs = first_term + heights.iter().skip(r).sum::<u64>() as i64;
    Ok(SubspaceReport {
        n: phis.len(),
        r,
        s_size,
        genus: g,
        heights,
        first_term,
        lhs,
        rhs,
        pass: lhs <= rhs,
    })
}

/// Every place above infinity, `D`, and the zeros and poles of the elements.
pub fn default_place_set(phis: &[QuadExtElement]) -> Result<Vec<ExtensionPlace>> {
    let first = phis.first().ok_or(Error::EmptyInput("place set"))?;
    let mut polys = Vec::new();
    for e in phis {
        for part in [e.base_part(), e.radical_part()] {
            if !part.is_zero() {
                polys.extend([part.numer().clone(), part.denom().clone()]);
            }
        }
    }
    places_above(first.radicand(), &polys)
}

/// Extension-place valuation at infinity of `abc` for a verified triple:
/// `-(3 deg f_1 + (x + y + z) deg a_1)` at a ramified infinity,
/// half of it on each sheet of a split one.
pub fn abc_infinity_valuation(sys: &PhiSystem) -> Result<Option<i64>> {
    let Some(phi0) = &sys.phi0 else {
        return Ok(None);
    };
    let w = &extension_places(&sys.radicand, &PlaceBundle::Infinite)?[0];
    let (r, eps) = phi0.pure_form().ok_or(Error::NotPureElement)?;
    pure_valuation(r, eps, &sys.radicand, w).map(Some)
}

/// `sum_{w | infinity} nu_w(sigma)`, the quantity pushed up by large `J`.
pub fn sigma_infinity_sum(sys: &PhiSystem) -> Result<i64> {
    let sigma = sys.sigma()?;
    valuation_nonzero(&sigma.norm(), &PlaceBundle::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power_sum::reference_sequence;
    use crate::search::{planted_hypothesis_instance, search};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(p(c))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_basic() {
        let (a, b) = (p(&[1, 1]), p(&[2, 1]));
        let c = p(&[3, 1]);
        let one = Polynomial::one();
        let gy = &(&a * &c) + &one;
        let gz = &(&b * &c) + &one;
        assert!(fixed_x_identity(&a, &b, &gy, &gz, &one));
        assert!(!fixed_x_identity(&a, &b, &gy, &(&gz + &one), &one));
        assert!(fixed_x_identity(&a, &a, &gy, &gy, &one));
    }

    #[test]
    fn reference_ledger() {
        let l = ConstantLedger::new(&reference_sequence(), &Polynomial::one()).unwrap();
        assert_eq!(l.kappa, rat(2, 3));
        assert_eq!((l.c2.clone(), l.c3.clone(), l.c4.clone()), (q(1), q(0), q(1)));
        assert_eq!(l.c5, rat(1, 2));
        assert_eq!(l.c6, rat(1, 6));
        assert_eq!(l.j, q(37));
        assert!(l.entries().iter().all(|e| !e.derivation.is_empty()));
    }

    #[test]
    fn gcd_bound_cases() {
        let g = reference_sequence();
        let one = Polynomial::one();
        let (gcd, rep) = gcd_bound(&g, &one, 1, 2).unwrap();
        assert!(gcd.is_one());
        assert_eq!(rep.case, 1);
        assert_eq!(rep.bound, q(1) + rat(8, 3));
        assert!(rep.pass);
        let (_, rep) = gcd_bound(&g, &one, 4, 5).unwrap();
        assert_eq!(rep.case, 2);
        assert!(rep.case_bound <= rep.bound);
        let bad = crate::degenerate::canonical_counterexample().g;
        assert!(matches!(gcd_bound(&bad, &one, 1, 2), Err(Error::HypothesesFail(_))));
    }

    #[test]
    fn growth() {
        let l = ConstantLedger::new(&reference_sequence(), &Polynomial::one()).unwrap();
        assert!(growth_check(&l, 7, 7));
        // (1/3) 2 - 1/2 = 1/6 > 0
        assert!(!growth_check(&l, 0, 2));
        assert!(!growth_check(&l, 0, 1000));
        assert!(growth_check(&l, 0, 1));
    }

    #[test]
    fn dependence_examples() {
        let d = p(&[0, 1]);
        let base = |c: &[i64]| QuadExtElement::base(rf(c), d.clone()).unwrap();
        let rad = |c: &[i64]| QuadExtElement::radical(rf(c), d.clone()).unwrap();
        let rel = linear_dependence(&[base(&[1]), base(&[0, 1]), base(&[1, 1])]).unwrap().unwrap();
        assert_eq!(rel, [1, 1, -1].map(FieldElement::from_int));
        assert!(linear_dependence(&[base(&[1]), base(&[0, 1])]).unwrap().is_none());
        let rel = linear_dependence(&[rad(&[1]), rad(&[0, 1]), rad(&[3, 2])]).unwrap().unwrap();
        assert_eq!(rel, [3, 2, -1].map(FieldElement::from_int));
        // 1 and sqrt(D) are independent
        assert!(linear_dependence(&[base(&[1]), rad(&[1])]).unwrap().is_none());
        assert!(linear_dependence(&[]).is_err());
    }

    #[test]
    fn phi_radicands() {
        let g = reference_sequence();
        let zero = Polynomial::zero();
        let even = build_phi_system(&g, &zero, (1, 2, 3), 1, None).unwrap();
        assert_eq!(even.radicand, p(&[0, 1]));
        let odd = build_phi_system(&g, &zero, (1, 2, 4), 1, None).unwrap();
        assert_eq!(odd.radicand, p(&[0, 1]));
        assert_eq!((even.parity, odd.parity), (0, 1));
        assert_eq!(even.len(), 1);
        // with p = 0 only the second slot contributes at order one
        assert_eq!(build_phi_system(&g, &zero, (1, 2, 3), 2, None).unwrap().len(), 4);
    }

    #[test]
    fn single_element_is_tight() {
        let d = p(&[1, 0, 0, 1]);
        let phi = QuadExtElement::radical(
            RationalFunction::new(p(&[0, 1]), p(&[1, 1])).unwrap(),
            d,
        )
        .unwrap();
        let s = default_place_set(std::slice::from_ref(&phi)).unwrap();
        let rep = subspace_verify(&[phi], &s, 1).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.pass), (0, 0, true));
    }

    #[test]
    fn missing_places_are_reported() {
        let d = p(&[0, 1]);
        let phi = QuadExtElement::base(RationalFunction::new(p(&[1]), p(&[2, 1])).unwrap(), d.clone()).unwrap();
        let s = extension_places(&d, &PlaceBundle::Infinite).unwrap();
        assert!(matches!(subspace_verify(&[phi], &s, 0), Err(Error::MissingPlace { .. })));
        let one = QuadExtElement::base(rf(&[1]), d.clone()).unwrap();
        let two = QuadExtElement::base(rf(&[2]), d).unwrap();
        assert!(matches!(subspace_verify(&[one, two], &s, 0), Err(Error::LinearlyDependent)));
    }

    #[test]
    fn planted_pipeline() {
        let (seq, shift, _) = planted_hypothesis_instance();
        let sol = search(&seq, &shift, 5, 3, 1).solutions.remove(0);
        let sys = build_phi_system(&seq, &shift, sol.indices(), 1, Some(&sol)).unwrap();
        assert_eq!(sys.radicand, p(&[1, 0, 1]));
        let expect = -(3 * 2 + 12 * 2) / 2;
        assert_eq!(abc_infinity_valuation(&sys).unwrap(), Some(expect));
        let elems = sys.grouped().unwrap().elements();
        let s = default_place_set(&elems).unwrap();
        let rep = subspace_verify(&elems, &s, 0).unwrap();
        assert!(rep.pass, "{rep:?}");
        let ic = instance_constants(&seq, &shift, &sol, Some(&rep));
        assert_eq!(ic.c10.unwrap(), ic.c8.unwrap() + 6);
    }
}
