//! Exact Gaussian elimination over any of the crate's fields.

use super::field::FieldElement;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Field operations needed by elimination.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one().div(&m[r][c]);
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = factor.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// A nonzero vector `v` with `m v = 0`, if one exists.
///
/// The first free column is set to `-1`, so the relation reads
/// `sum_{pivots} v_j col_j = col_free`.
pub fn kernel_vector<T: Scalar>(m: &[Vec<T>], cols: usize) -> Option<Vec<T>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![T::zero(); cols];
    v[free] = T::one().neg();
    for (row, &pc) in pivots.iter().enumerate() {
        // x_pc + a * x_free = 0
        v[pc] = work[row][free].clone();
    }
    Some(v)
}

/// Solves the square system `m x = rhs`.
pub fn solve<T: Scalar>(m: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = m.len();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::SingularSystem);
    }
    Ok(aug.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // columns (1,0), (0,1), (1,1)
        let m = vec![vec![fe(1), fe(0), fe(1)], vec![fe(0), fe(1), fe(1)]];
        let v = kernel_vector(&m, 3).unwrap();
        assert_eq!(v, vec![fe(1), fe(1), fe(-1)]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn solve_small_system() {
        let m = vec![vec![fe(2), fe(1)], vec![fe(1), fe(3)]];
        let x = solve(&m, &[fe(5), fe(10)]).unwrap();
        assert_eq!(x, vec![fe(1), fe(3)]);
        let singular = vec![vec![fe(1), fe(2)], vec![fe(2), fe(4)]];
        assert_eq!(solve(&singular, &[fe(1), fe(2)]), Err(Error::SingularSystem));
    }
}
