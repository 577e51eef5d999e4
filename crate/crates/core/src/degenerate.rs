//! A sequence without dominant root carrying infinitely many triples.
//!
//! Three single-term sequences `A, B, C` are multiplied pairwise, the
//! products are spread over the residue classes mod 3 with cube-root-of-
//! unity filters, and `G = D + E + F + 1` takes the values
//! `A_{3u}B_{3u} + 1`, `A_{3u}C_{3u} + 1`, `B_{3u}C_{3u} + 1` in turn.

use serde::Serialize;

use crate::algebra::{is_square_in_closure, is_square_polynomial, is_squarefree, FieldElement, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::power_sum::{HypothesisReport, PowerSum};

/// Roots-of-unity filter: `Q_n = P_{n-r}` for `n = r (mod 3)`, else 0.
pub fn phase_filter(seq: &PowerSum, r: u8) -> PowerSum {
    assert!(r < 3, "shift must be 0, 1 or 2");
    let zeta = FieldElement::zeta3();
    let third = FieldElement::from_ratio(1, 3);
    let mut terms = Vec::new();
    for (s, sigma) in seq.terms() {
        let sigma_r = RationalFunction::from_poly(sigma.pow(r as u32));
        let base = s / &sigma_r;
        for j in 0..3u32 {
            // zeta^{-jr} = zeta^{(3 - j) r mod 3}
            let phase = zeta.pow(((3 - j) * r as u32) % 3);
            let coeff = base.scale(&(&third * &phase));
            let root = sigma.scale(&zeta.pow(j));
            terms.push((coeff, root));
        }
    }
    PowerSum::from_terms(terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CounterexampleSpec {
    pub a: PowerSum,
    pub b: PowerSum,
    pub c: PowerSum,
    pub d: PowerSum,
    pub e: PowerSum,
    pub f: PowerSum,
    pub g: PowerSum,
    pub constraints: Vec<ConstraintCheck>,
    pub hypotheses: HypothesisReport,
}

impl CounterexampleSpec {
    pub fn valid(&self) -> bool {
        self.constraints.iter().all(|c| c.pass)
    }
}

fn pairwise<T>(items: &[T], ok: impl Fn(&T, &T) -> bool) -> Option<(usize, usize)> {
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            if !ok(&items[i], &items[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn check(name: &'static str, failure: Option<String>) -> ConstraintCheck {
    ConstraintCheck {
        name,
        pass: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

fn input_constraints(seqs: [&PowerSum; 3]) -> Vec<ConstraintCheck> {
    let roots: Vec<Polynomial> = seqs.iter().flat_map(|s| s.roots().to_vec()).collect();
    let coeffs: Vec<RationalFunction> = seqs.iter().flat_map(|s| s.coeffs().to_vec()).collect();
    let poly_coeffs: Vec<Polynomial> = coeffs.iter().filter_map(RationalFunction::to_polynomial).collect();
    let mut out = Vec::new();
    out.push(check(
        "roots_are_squares",
        roots
            .iter()
            .find(|r| !is_square_polynomial(r).expect("nonzero"))
            .map(|r| format!("{r} is not a square")),
    ));
    out.push(check(
        "roots_nonconstant",
        roots.iter().find(|r| r.is_constant()).map(|r| format!("{r} is constant")),
    ));
    out.push(check(
        "roots_pairwise_distinct",
        pairwise(&roots, |x, y| x != y).map(|(i, j)| format!("roots {i} and {j} coincide")),
    ));
    out.push(check(
        "roots_pairwise_coprime",
        pairwise(&roots, |x, y| x.is_coprime(y)).map(|(i, j)| format!("roots {i} and {j} share a zero")),
    ));
    out.push(check(
        "coefficients_nonconstant_squarefree",
        if poly_coeffs.len() != coeffs.len() {
            Some("a coefficient is not a polynomial".into())
        } else {
            poly_coeffs
                .iter()
                .find(|c| c.is_constant() || !is_squarefree(c))
                .map(|c| format!("{c} is constant or has a multiple root"))
        },
    ));
    out.push(check(
        "coefficients_pairwise_distinct",
        pairwise(&coeffs, |x, y| x != y).map(|(i, j)| format!("coefficients {i} and {j} coincide")),
    ));
    out.push(check(
        "coefficients_pairwise_coprime",
        pairwise(&poly_coeffs, |x, y| x.is_coprime(y))
            .map(|(i, j)| format!("coefficients {i} and {j} share a zero")),
    ));
    out.push(check(
        "roots_coprime_to_coefficients",
        roots.iter().find_map(|r| {
            poly_coeffs
                .iter()
                .find(|c| !r.is_coprime(c))
                .map(|c| format!("root {r} and coefficient {c} share a zero"))
        }),
    ));
    out
}

fn conclusion_checks(g: &PowerSum, hyp: &HypothesisReport) -> Vec<ConstraintCheck> {
    let mut out = Vec::new();
    out.push(check(
        "g_no_dominant_root",
        (hyp.top_degree_ties < 2).then(|| format!("only {} root of top degree", hyp.top_degree_ties)),
    ));
    out.push(check(
        "g_roots_are_squares",
        g.roots()
            .iter()
            .find(|r| !is_square_polynomial(r).expect("nonzero"))
            .map(|r| format!("{r} is not a square")),
    ));
    out.push(check(
        "f1_square_iff_f1_alpha1_square",
        (hyp.f1_is_square != hyp.f1_alpha1_is_square).then(|| "square verdicts differ".to_string()),
    ));
    out.push(check(
        "nonconstant_root_coefficients_not_squares",
        g.terms()
            .filter(|(_, r)| !r.is_constant())
            .find(|(c, _)| is_square_in_closure(c).expect("nonzero"))
            .map(|(c, r)| format!("coefficient {c} of root {r} is a square")),
    ));
    out
}

/// Assembles `G` from `A, B, C` and records every construction constraint.
pub fn build_counterexample(a: &PowerSum, b: &PowerSum, c: &PowerSum) -> CounterexampleSpec {
    let d = phase_filter(&a.product(b), 0);
    let e = phase_filter(&a.product(c), 1);
    let f = phase_filter(&b.product(c), 2);
    let g = d.add(&e).add(&f).add(&PowerSum::constant(RationalFunction::one()));
    let hypotheses = g.check_hypotheses();
    let mut constraints = input_constraints([a, b, c]);
    constraints.extend(conclusion_checks(&g, &hypotheses));
    CounterexampleSpec {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d,
        e,
        f,
        g,
        constraints,
        hypotheses,
    }
}

fn single(coeff: &[i64], root: Polynomial) -> PowerSum {
    PowerSum::new(vec![RationalFunction::from_poly(Polynomial::from_ints(coeff))], vec![root])
        .expect("valid")
}

/// `A_n = (X+1)(X^2)^n`, `B_n = (X+2)((X+5)^2)^n`, `C_n = (X+3)((X+7)^2)^n`.
pub fn canonical_inputs() -> (PowerSum, PowerSum, PowerSum) {
    (
        single(&[1, 1], Polynomial::from_ints(&[0, 0, 1])),
        single(&[2, 1], Polynomial::from_ints(&[5, 1]).pow(2)),
        single(&[3, 1], Polynomial::from_ints(&[7, 1]).pow(2)),
    )
}

pub fn canonical_counterexample() -> CounterexampleSpec {
    let (a, b, c) = canonical_inputs();
    build_counterexample(&a, &b, &c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedTriple {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

fn poly_value(seq: &PowerSum, n: u64) -> Result<Polynomial> {
    seq.evaluate_polynomial(n).ok_or(Error::NonPolynomialValue(n))
}

/// `(A_{3u}, B_{3u}, C_{3u})` at indices `(3u, 3u+1, 3u+2)` for `3u + 2 <= bound`,
/// each checked against `G` with `p = 1`.
pub fn planted_triples(spec: &CounterexampleSpec, bound: u64) -> Result<Vec<PlantedTriple>> {
    let one = Polynomial::one();
    let mut out = Vec::new();
    let mut u = 0;
    while 3 * u + 2 <= bound {
        let n = 3 * u;
        let (a, b, c) = (poly_value(&spec.a, n)?, poly_value(&spec.b, n)?, poly_value(&spec.c, n)?);
        let t = PlantedTriple { a, b, c, x: n, y: n + 1, z: n + 2 };
        for (idx, lhs) in [(t.x, &t.a * &t.b), (t.y, &t.a * &t.c), (t.z, &t.b * &t.c)] {
            if poly_value(&spec.g, idx)? != &lhs + &one {
                return Err(Error::CertificationFailed(format!("planted value at index {idx}")));
            }
        }
        out.push(t);
        u += 1;
    }
    Ok(out)
}
