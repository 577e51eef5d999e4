//! Exhaustive search for triples `(a, b, c)` with
//! `ab + p = G_x`, `ac + p = G_y`, `bc + p = G_z` over bounded indices.
//!
//! For `A = G_x - p`, `B = G_y - p`, `C = G_z - p` a solution forces
//! `a^2 = AB / C`, `b = A / a`, `c = B / a`; nothing is factored.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{is_square_polynomial, linalg, poly_sqrt, Extension, Polynomial, RationalFunction};
use crate::bounds::fixed_x_identity;
use crate::error::{Error, Result};
use crate::io::poly_to_json;
use crate::power_sum::PowerSum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub equation_x: bool,
    pub equation_y: bool,
    pub equation_z: bool,
    pub distinct_nonzero: bool,
    pub fixed_x_identity: bool,
}

impl Certificate {
    pub fn all(&self) -> bool {
        self.equation_x && self.equation_y && self.equation_z && self.distinct_nonzero && self.fixed_x_identity
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSolution {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    /// `lambda` when `a` needed `Q(sqrt lambda)` over a rational sequence.
    pub scaling: Option<i64>,
    pub certificate: Certificate,
}

impl TripleSolution {
    pub fn indices(&self) -> (u64, u64, u64) {
        (self.x, self.y, self.z)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "a": poly_to_json(&self.a),
            "b": poly_to_json(&self.b),
            "c": poly_to_json(&self.c),
            "scaling": self.scaling,
            "certificate": self.certificate,
        })
    }

    /// `{a, b, c}` sorted by degree, then coefficients.
    pub fn unordered_key(&self) -> [Polynomial; 3] {
        let mut k = [self.a.clone(), self.b.clone(), self.c.clone()];
        k.sort_by(|p, q| p.graded_cmp(q));
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedIndex {
    pub n: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    pub solutions: Vec<TripleSolution>,
    pub skipped: Vec<SkippedIndex>,
}

/// `G_n - p` for every usable index; unusable indices are reported.
fn shifted_values(
    seq: &PowerSum,
    p: &Polynomial,
    lo: u64,
    hi: u64,
    jobs: usize,
) -> (Vec<(u64, Polynomial)>, Vec<SkippedIndex>) {
    let raw: Vec<(u64, RationalFunction)> = with_pool(jobs, || {
        (lo..=hi).into_par_iter().map(|n| (n, seq.evaluate(n))).collect()
    });
    let mut values = Vec::new();
    let mut skipped = Vec::new();
    for (n, g) in raw {
        match g.to_polynomial() {
            None => skipped.push(SkippedIndex { n, reason: "value is not a polynomial".into() }),
            Some(g) => {
                let a = &g - p;
                if a.is_zero() {
                    skipped.push(SkippedIndex { n, reason: "G_n - p vanishes".into() });
                } else {
                    values.push((n, a));
                }
            }
        }
    }
    (values, skipped)
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

/// Recovers `(a, b, c)` from `A, B, C`, or `None` when no solution exists.
pub fn recover(a_val: &Polynomial, b_val: &Polynomial, c_val: &Polynomial) -> Option<(Polynomial, Polynomial, Polynomial)> {
    let (da, db, dc) = (a_val.udeg(), b_val.udeg(), c_val.udeg());
    if da + db < dc || (da + db - dc) % 2 == 1 {
        return None;
    }
    let ab = a_val * b_val;
    let q = ab.try_div(c_val)?;
    if !is_square_polynomial(&q).ok()? {
        return None;
    }
    let a = poly_sqrt(&q).ok()?;
    let b = a_val.try_div(&a)?;
    let c = b_val.try_div(&a)?;
    if &(&b * &c) != c_val {
        return None;
    }
    Some((a, b, c))
}

fn scaling_of(a: &Polynomial, base: Extension) -> Option<i64> {
    match (a.extension(), base) {
        (Extension::Sqrt(d), Extension::Rational) => Some(d),
        _ => None,
    }
}

/// All solutions with `n_min <= x < y < z <= bound`, ordered by `(x, y, z)`.
pub fn search(seq: &PowerSum, p: &Polynomial, bound: u64, n_min: u64, jobs: usize) -> SearchOutcome {
    if n_min > bound {
        return SearchOutcome::default();
    }
    let (values, skipped) = shifted_values(seq, p, n_min, bound, jobs);
    let m = values.len();
    let triples: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).flat_map(move |j| ((j + 1)..m).map(move |k| (i, j, k))))
        .collect();
    let base = seq.extension();
    let solutions = with_pool(jobs, || {
        triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let (x, va) = &values[i];
                let (y, vb) = &values[j];
                let (z, vc) = &values[k];
                let (a, b, c) = recover(va, vb, vc)?;
                if a == b || a == c || b == c {
                    return None;
                }
                let mut sol = TripleSolution {
                    x: *x,
                    y: *y,
                    z: *z,
                    scaling: scaling_of(&a, base),
                    a,
                    b,
                    c,
                    certificate: Certificate {
                        equation_x: false,
                        equation_y: false,
                        equation_z: false,
                        distinct_nonzero: false,
                        fixed_x_identity: false,
                    },
                };
                sol.certificate = certify(&sol, seq, p);
                sol.certificate.all().then_some(sol)
            })
            .collect()
    });
    SearchOutcome { solutions, skipped }
}

fn certify(sol: &TripleSolution, seq: &PowerSum, p: &Polynomial) -> Certificate {
    let value = |n: u64| seq.evaluate_polynomial(n);
    let eq = |n: u64, l: &Polynomial, r: &Polynomial| value(n).is_some_and(|g| &(l * r) + p == g);
    let (a, b, c) = (&sol.a, &sol.b, &sol.c);
    let distinct = !a.is_zero() && !b.is_zero() && !c.is_zero() && a != b && a != c && b != c;
    let identity = match (value(sol.y), value(sol.z)) {
        (Some(gy), Some(gz)) => fixed_x_identity(a, b, &gy, &gz, p),
        _ => false,
    };
    Certificate {
        equation_x: eq(sol.x, a, b),
        equation_y: eq(sol.y, a, c),
        equation_z: eq(sol.z, b, c),
        distinct_nonzero: distinct,
        fixed_x_identity: identity,
    }
}

/// Re-checks a solution from scratch.
///
/// Any labeling is accepted as long as the three indices are pairwise
/// distinct and the equations hold for it. The degree order
/// `deg a <= deg b <= deg c` is required only for `x < y < z` with
/// `deg(G_x - p) <= deg(G_y - p) <= deg(G_z - p)`, where it is forced.
pub fn verify_triple(sol: &TripleSolution, seq: &PowerSum, p: &Polynomial) -> bool {
    if sol.x == sol.y || sol.x == sol.z || sol.y == sol.z {
        return false;
    }
    if !certify(sol, seq, p).all() {
        return false;
    }
    if sol.x < sol.y && sol.y < sol.z {
        let d = |n: u64| (&seq.evaluate_polynomial(n).expect("checked") - p).degree();
        if d(sol.x) <= d(sol.y) && d(sol.y) <= d(sol.z) {
            return sol.a.degree() <= sol.b.degree() && sol.b.degree() <= sol.c.degree();
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRelations {
    pub deg_gy: i64,
    pub deg_a_plus_deg_c: i64,
    pub deg_gz: i64,
    pub deg_b_plus_deg_c: i64,
    /// `(z - y) deg a_1`, or `deg G_z - deg G_y` without a dominant root.
    pub index_gap_degree: i64,
    pub deg_b_minus_deg_a: i64,
    pub used_degree_law: bool,
    pub pass: bool,
}

pub fn degree_relations(sol: &TripleSolution, seq: &PowerSum, p: &Polynomial) -> Result<DegreeRelations> {
    if !(sol.x < sol.y && sol.y < sol.z) {
        return Err(Error::InvalidIndices(format!("need x < y < z, got {:?}", sol.indices())));
    }
    let deg = |q: &Polynomial| q.degree().expect_finite();
    let gdeg = |n: u64| -> Result<i64> {
        Ok(deg(&seq.evaluate_polynomial(n).ok_or(Error::NonPolynomialValue(n))?))
    };
    let (gy, gz) = (gdeg(sol.y)?, gdeg(sol.z)?);
    let (da, db, dc) = (deg(&sol.a), deg(&sol.b), deg(&sol.c));
    let (gap, used_law) = match seq.constants(p) {
        Ok(k) if sol.y >= k.n0 => ((sol.z - sol.y) as i64 * k.deg_alpha1, true),
        _ => (gz - gy, false),
    };
    Ok(DegreeRelations {
        deg_gy: gy,
        deg_a_plus_deg_c: da + dc,
        deg_gz: gz,
        deg_b_plus_deg_c: db + dc,
        index_gap_degree: gap,
        deg_b_minus_deg_a: db - da,
        used_degree_law: used_law,
        pass: gy == da + dc && gz == db + dc && gap == db - da,
    })
}

/// Completes `f_1 a_1^n` with lower terms `f_i b_i^n` (roots given) so that
/// the triple `(a, b, c)` sits at indices `(x, y, z)` for the shift `p`.
///
/// Solves the square system `sum_i f_i b_i^n = (product + p) - f_1 a_1^n`
/// for `n = x, y, z`, so exactly three lower roots are needed.
pub fn fit_lower_terms(
    f1: &RationalFunction,
    alpha1: &Polynomial,
    lower_roots: &[Polynomial],
    p: &Polynomial,
    indices: (u64, u64, u64),
    triple: (&Polynomial, &Polynomial, &Polynomial),
) -> Result<PowerSum> {
    if lower_roots.len() != 3 {
        return Err(Error::InvalidIndices("exactly three lower roots are needed".into()));
    }
    let (a, b, c) = triple;
    let (x, y, z) = indices;
    let rows = [(x, a * b), (y, a * c), (z, b * c)];
    let mut m = Vec::new();
    let mut rhs = Vec::new();
    for (n, prod) in &rows {
        let e = u32::try_from(*n).expect("index too large");
        m.push(
            lower_roots
                .iter()
                .map(|r| RationalFunction::from_poly(r.pow(e)))
                .collect::<Vec<_>>(),
        );
        let lead = f1 * &RationalFunction::from_poly(alpha1.pow(e));
        rhs.push(&RationalFunction::from_poly(prod + p) - &lead);
    }
    let lower = linalg::solve(&m, &rhs)?;
    let mut coeffs = vec![f1.clone()];
    coeffs.extend(lower);
    let mut roots = vec![alpha1.clone()];
    roots.extend(lower_roots.iter().cloned());
    PowerSum::new(coeffs, roots)
}

/// A sequence meeting every hypothesis with a solution at `(3, 4, 5)` and
/// `n0 = 3`: `f_1 = X^2 + 1`, `a_1 = X^2`, lower roots `X, 1, -1`, `p = 1`.
pub fn planted_hypothesis_instance() -> (PowerSum, Polynomial, (Polynomial, Polynomial, Polynomial)) {
    use crate::algebra::FieldElement;
    let r = |n: i64, d: i64| FieldElement::from_ratio(n, d);
    let a = Polynomial::new(vec![r(0, 1), r(1, 2), r(0, 1), r(1, 1)]);
    let b = Polynomial::new(vec![r(0, 1), r(-1, 8), r(0, 1), r(1, 2), r(0, 1), r(1, 1)]);
    let c = Polynomial::new(vec![
        r(0, 1),
        r(1, 16),
        r(0, 1),
        r(-1, 8),
        r(0, 1),
        r(1, 2),
        r(0, 1),
        r(1, 1),
    ]);
    let p = Polynomial::one();
    let seq = fit_lower_terms(
        &RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, 1])),
        &Polynomial::from_ints(&[0, 0, 1]),
        &[Polynomial::x(), Polynomial::from_ints(&[1]), Polynomial::from_ints(&[-1])],
        &p,
        (3, 4, 5),
        (&a, &b, &c),
    )
    .expect("nonsingular");
    (seq, p, (a, b, c))
}
