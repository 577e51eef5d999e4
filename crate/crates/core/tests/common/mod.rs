//! Independent reference computations shared by the integration tests.
//! Everything here works on plain coefficient vectors of rationals and
//! avoids the crate's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use powersum_core::algebra::{FieldElement, Polynomial};

pub type Q = BigRational;
pub type Dense = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn trim(mut v: Dense) -> Dense {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn to_dense(p: &Polynomial) -> Dense {
    p.coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficient").clone())
        .collect()
}

pub fn from_dense(v: &[Q]) -> Polynomial {
    Polynomial::new(v.iter().cloned().map(FieldElement::from).collect())
}

pub fn dense_ints(c: &[i64]) -> Dense {
    trim(c.iter().map(|&n| q(n)).collect())
}

pub fn mul(a: &[Q], b: &[Q]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &[Q], b: &[Q]) -> Dense {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
            .collect(),
    )
}

pub fn pow(a: &[Q], e: u32) -> Dense {
    (0..e).fold(vec![q(1)], |acc, _| mul(&acc, a))
}

/// Schoolbook long division.
pub fn div_rem(a: &[Q], b: &[Q]) -> (Dense, Dense) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

/// Monic gcd by the plain Euclidean remainder sequence.
pub fn euclid_gcd(a: &[Q], b: &[Q]) -> Dense {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(Q::one);
    x.iter().map(|c| c / &lead).collect()
}

pub fn derivative(a: &[Q]) -> Dense {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
}

/// Multivariate truncated series keyed by exponent vectors.
pub type Series = BTreeMap<Vec<u32>, Q>;

/// Coefficients of `sqrt(1 + u_1 + ... + u_k)` through total order
/// `max_total`, found by solving `s^2 = 1 + sum u_i` term by term.
pub fn sqrt_series(k: usize, max_total: u32) -> Series {
    let mut target = Series::new();
    target.insert(vec![0; k], q(1));
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        target.insert(e, q(1));
    }
    let mut all: Vec<Vec<u32>> = Vec::new();
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(k, left - v, cur, out);
            cur.pop();
        }
    }
    rec(k, max_total, &mut Vec::new(), &mut all);
    all.sort_by_key(|e| e.iter().sum::<u32>());
    let mut s = Series::new();
    for e in all {
        if e.iter().all(|&v| v == 0) {
            s.insert(e, q(1));
            continue;
        }
        // coefficient of X^e in s^2 = 2 s_e + sum over proper splits
        let mut acc = target.get(&e).cloned().unwrap_or_else(Q::zero);
        for (e1, c1) in &s {
            if e1.iter().all(|&v| v == 0) {
                continue;
            }
            if e1.iter().zip(&e).all(|(a, b)| a <= b) {
                let e2: Vec<u32> = e.iter().zip(e1).map(|(b, a)| b - a).collect();
                if e2.iter().all(|&v| v == 0) {
                    continue;
                }
                if let Some(c2) = s.get(&e2) {
                    acc -= c1 * c2;
                }
            }
        }
        s.insert(e, acc / q(2));
    }
    s
}

/// Determinant by the Leibniz permutation sum.
pub fn leibniz_det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Q::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, i: usize, m: &[Vec<Q>], total: &mut Q) {
    let n = perm.len();
    if i == n {
        let mut inversions = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let mut prod = Q::one();
        for (r, &c) in perm.iter().enumerate() {
            prod *= &m[r][c];
            if prod.is_zero() {
                return;
            }
        }
        if inversions % 2 == 1 {
            prod = -prod;
        }
        *total += prod;
        return;
    }
    for j in i..n {
        perm.swap(i, j);
        permute(perm, i + 1, m, total);
        perm.swap(i, j);
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of a rows x cols matrix as the size of its largest nonzero minor.
pub fn minor_rank(m: &[Vec<Q>], cols: usize) -> usize {
    let rows = m.len();
    for size in (1..=cols.min(rows)).rev() {
        for rs in combinations(rows, size) {
            for cs in combinations(cols, size) {
                let sub: Vec<Vec<Q>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                if !leibniz_det(&sub).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}
