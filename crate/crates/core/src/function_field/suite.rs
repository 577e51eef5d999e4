//! Property suites over samples of rational functions, one record per
//! assertion.

use serde::Serialize;

use super::{height, height_definitional, valuation_sum, Height};
use crate::algebra::{Polynomial, RationalFunction};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssertionRecord {
    pub property: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub records: Vec<AssertionRecord>,
}

impl SuiteReport {
    fn push(&mut self, property: &str, inputs: &[&RationalFunction], lhs: String, rhs: String, pass: bool) {
        self.records.push(AssertionRecord {
            property: property.to_string(),
            inputs: inputs.iter().map(|f| f.to_string()).collect(),
            lhs,
            rhs,
            pass,
        });
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&AssertionRecord> {
        self.records.iter().find(|r| !r.pass)
    }

    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
            .collect()
    }
}

fn h(f: &RationalFunction) -> u64 {
    height(f).finite().expect("nonzero")
}

/// Exponents used for the power property.
const POWERS: [i64; 5] = [-3, -1, 0, 2, 3];

/// Checks the six height properties on every pair; `outer` is the
/// polynomial `A` used for `H(A(f)) = deg A * H(f)`.
pub fn lemma1_property_suite(
    samples: &[(RationalFunction, RationalFunction)],
    outer: &Polynomial,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::default();
    let deg_a = outer.udeg() as u64;
    for (f, g) in samples {
        for x in [f, g] {
            let hf = h(x);
            let hinv = h(&x.inverse()?);
            rep.push("a", &[x], format!("H(f)={hf}"), format!("H(1/f)={hinv}"), hf == hinv);
        }
        let (hf, hg) = (h(f) as i64, h(g) as i64);
        let sum = f + g;
        if !sum.is_zero() {
            let hs = h(&sum) as i64;
            rep.push(
                "b",
                &[f, g],
                format!("{}<= H(f+g)={hs}", hf - hg),
                format!("{}", hf + hg),
                hf - hg <= hs && hs <= hf + hg,
            );
        }
        let hp = h(&(f * g)) as i64;
        rep.push(
            "c",
            &[f, g],
            format!("{}<= H(fg)={hp}", hf - hg),
            format!("{}", hf + hg),
            hf - hg <= hp && hp <= hf + hg,
        );
        for n in POWERS {
            let hn = h(&f.pow(n)?) as i64;
            rep.push("d", &[f], format!("H(f^{n})={hn}"), format!("{}", n.abs() * hf), hn == n.abs() * hf);
        }
        for x in [f, g] {
            let zero = h(x) == 0;
            rep.push(
                "e",
                &[x],
                format!("H(f)=0:{zero}"),
                format!("constant:{}", x.is_constant()),
                zero == x.is_constant(),
            );
        }
        if !f.is_constant() {
            let ha = h(&f.compose_into(outer));
            rep.push(
                "f",
                &[f],
                format!("H(A(f))={ha}"),
                format!("{}", deg_a * h(f)),
                ha == deg_a * h(f),
            );
        }
    }
    Ok(rep)
}

/// Sum formula and definitional-height agreement for every sample.
pub fn sum_formula_suite(samples: &[RationalFunction]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::default();
    for f in samples {
        let s = valuation_sum(f)?;
        rep.push("sum_formula", &[f], s.to_string(), "0".into(), s == 0);
        let hd = height_definitional(f)?;
        let hm = height(f);
        rep.push(
            "height_definitional",
            &[f],
            format!("{hd:?}"),
            format!("{hm:?}"),
            hd == hm && hd != Height::Infinity,
        );
    }
    Ok(rep)
}
