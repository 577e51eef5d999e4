//! JSON encodings shared by the library and the CLI.
//!
//! Rationals are `"num/den"` strings (`"n"` is accepted on input). An
//! element `a + b t` of `Q(sqrt d)` or `Q(zeta3)` is the pair `["a", "b"]`.
//! Polynomials are ascending coefficient arrays, rational functions
//! `{"num": [...], "den": [...]}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serializer;
use serde_json::{json, Value};

use crate::algebra::{Extension, FieldElement, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::power_sum::PowerSum;

pub const SCHEMA_VERSION: u64 = 1;

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(q))
}

pub fn parse_rational(s: &str, loc: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(loc, format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse(loc, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub fn field_to_string(ext: Extension) -> String {
    ext.to_string()
}

pub fn parse_field(s: &str) -> Result<Extension> {
    match s {
        "Q" => Ok(Extension::Rational),
        "Q_zeta3" => Ok(Extension::Zeta3),
        _ => {
            let d = s
                .strip_prefix("Q_sqrt:")
                .and_then(|d| d.parse::<i64>().ok())
                .ok_or_else(|| Error::parse("field", format!("unknown field tag {s:?}")))?;
            let (lambda, _) = crate::algebra::field::squarefree_rational_part(&BigRational::from(BigInt::from(d)));
            if lambda != d || d == 1 || d == 0 {
                return Err(Error::parse("field", format!("radicand {d} is not a squarefree integer other than 0, 1")));
            }
            Ok(Extension::Sqrt(d))
        }
    }
}

pub fn element_to_json(c: &FieldElement) -> Value {
    match c.as_rational() {
        Some(q) => Value::String(rational_to_string(q)),
        None => {
            let (a, b) = c.coordinates();
            json!([rational_to_string(&a), rational_to_string(&b)])
        }
    }
}

fn element_from_json(v: &Value, ext: Extension, loc: &str) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(FieldElement::from(parse_rational(s, loc)?)),
        Value::Number(n) if n.is_i64() => Ok(FieldElement::from_int(n.as_i64().expect("i64"))),
        Value::Array(pair) if pair.len() == 2 => {
            if ext == Extension::Rational {
                return Err(Error::parse(loc, "pair coefficient in field Q"));
            }
            let part = |i: usize| -> Result<BigRational> {
                match &pair[i] {
                    Value::String(s) => parse_rational(s, &format!("{loc}[{i}]")),
                    Value::Number(n) if n.is_i64() => Ok(BigRational::from(BigInt::from(n.as_i64().expect("i64")))),
                    _ => Err(Error::parse(format!("{loc}[{i}]"), "expected a rational string")),
                }
            };
            Ok(FieldElement::from_coordinates(ext, part(0)?, part(1)?))
        }
        _ => Err(Error::parse(loc, "expected a rational string or a pair")),
    }
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(element_to_json).collect())
}

pub fn poly_from_json(v: &Value, ext: Extension, loc: &str) -> Result<Polynomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse(loc, "expected a coefficient array"))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(i, c)| element_from_json(c, ext, &format!("{loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

pub fn ratfunc_to_json(f: &RationalFunction) -> Value {
    json!({"num": poly_to_json(f.numer()), "den": poly_to_json(f.denom())})
}

pub fn ratfunc_from_json(v: &Value, ext: Extension, loc: &str) -> Result<RationalFunction> {
    if v.is_array() {
        return Ok(RationalFunction::from_poly(poly_from_json(v, ext, loc)?));
    }
    let num = v
        .get("num")
        .ok_or_else(|| Error::parse(loc, "missing \"num\""))?;
    let num = poly_from_json(num, ext, &format!("{loc}.num"))?;
    let den = match v.get("den") {
        Some(d) => poly_from_json(d, ext, &format!("{loc}.den"))?,
        None => Polynomial::one(),
    };
    RationalFunction::new(num, den).map_err(|e| Error::parse(loc, e.to_string()))
}

/// A parsed sequence-spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    pub field: Extension,
    pub seq: PowerSum,
    pub p: Option<Polynomial>,
}

pub fn spec_to_json(seq: &PowerSum, p: Option<&Polynomial>) -> Value {
    let terms: Vec<Value> = seq
        .terms()
        .map(|(c, r)| json!({"coefficient": ratfunc_to_json(c), "root": poly_to_json(r)}))
        .collect();
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "field": field_to_string(seq.extension()),
        "terms": terms,
    });
    if let Some(p) = p {
        v["p"] = poly_to_json(p);
    }
    v
}

pub fn spec_from_json(v: &Value) -> Result<SequenceSpec> {
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(Error::parse("schema_version", format!("unsupported version {other}"))),
        None => return Err(Error::parse("schema_version", "missing or not an integer")),
    }
    let field = parse_field(
        v.get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse("field", "missing or not a string"))?,
    )?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("terms", "missing or not an array"))?;
    let mut coeffs = Vec::new();
    let mut roots = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let loc = format!("terms[{i}]");
        let c = t
            .get("coefficient")
            .ok_or_else(|| Error::parse(&loc, "missing \"coefficient\""))?;
        let r = t.get("root").ok_or_else(|| Error::parse(&loc, "missing \"root\""))?;
        coeffs.push(ratfunc_from_json(c, field, &format!("{loc}.coefficient"))?);
        roots.push(poly_from_json(r, field, &format!("{loc}.root"))?);
    }
    let seq = PowerSum::new(coeffs, roots).map_err(|e| Error::parse("terms", e.to_string()))?;
    let p = match v.get("p") {
        None | Some(Value::Null) => None,
        Some(p) => Some(poly_from_json(p, field, "p")?),
    };
    Ok(SequenceSpec { field, seq, p })
}

pub fn parse_spec(text: &str) -> Result<SequenceSpec> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    spec_from_json(&v)
}

/// Parses `p` given either as a JSON coefficient array or as an expression
/// such as `X^2 + 3*X - 1/2`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::parse("polynomial", e.to_string()))?;
        return poly_from_json(&v, Extension::Rational, "polynomial");
    }
    parse_expression(t)
}

fn parse_expression(text: &str) -> Result<Polynomial> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse("polynomial", "empty expression"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut out = Polynomial::zero();
    for term in terms {
        out = &out + &parse_monomial(term)?;
    }
    Ok(out)
}

fn parse_monomial(term: &str) -> Result<Polynomial> {
    let err = |m: &str| Error::parse(format!("term {term:?}"), m.to_string());
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(err("dangling sign"));
    }
    let mut coeff = BigRational::one();
    let mut exp = 0usize;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(err("empty factor"));
        }
        // implicit product such as `3X^2`
        let (num, factor) = match factor.find(['X', 'x']) {
            Some(i) if i > 0 => (Some(&factor[..i]), &factor[i..]),
            _ => (None, factor),
        };
        if let Some(num) = num {
            coeff *= parse_rational(num, &format!("term {term:?}"))?;
        }
        if let Some(rest) = factor.strip_prefix(['X', 'x']) {
            let e = match rest.strip_prefix('^') {
                Some(k) => k.parse::<usize>().map_err(|_| err("bad exponent"))?,
                None if rest.is_empty() => 1,
                None => return Err(err("unexpected text after X")),
            };
            exp += e;
        } else {
            coeff *= parse_rational(factor, &format!("term {term:?}"))?;
        }
    }
    let c = FieldElement::from(coeff * BigRational::from(BigInt::from(sign)));
    Ok(Polynomial::monomial(c, exp))
}
