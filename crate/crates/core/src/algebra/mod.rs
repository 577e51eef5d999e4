//! Exact arithmetic: coefficient fields, polynomials, rational functions,
//! squarefree decompositions and exact square roots.

pub mod field;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod squarefree;

pub use field::{Extension, FieldElement};
pub use poly::{Degree, Polynomial};
pub use ratfunc::RationalFunction;
pub use squarefree::{
    is_square_in_closure, is_square_polynomial, is_squarefree, poly_sqrt, split_square,
    squarefree_decompose, squarefree_part, SquareSplit, SquarefreeDecomposition,
};

/// Pairwise coprime refinement of a list of nonzero polynomials.
///
/// Every returned element is monic, squarefree and nonconstant, and the
/// squarefree part of each input is a product of some of them.
pub fn gcd_free_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in polys.iter().filter(|f| !f.is_zero()) {
        let dec = squarefree_decompose(f).expect("nonzero");
        for (g, _) in dec.factors {
            basis.push(g);
        }
    }
    loop {
        let mut changed = false;
        'outer: for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i] == basis[j] {
                    basis.remove(j);
                    changed = true;
                    break 'outer;
                }
                let g = basis[i].gcd(&basis[j]).expect("nonzero");
                if !g.is_constant() {
                    let u = basis[i].exact_div(&g).expect("divides");
                    let v = basis[j].exact_div(&g).expect("divides");
                    basis.remove(j);
                    basis.remove(i);
                    basis.extend([g, u, v].into_iter().filter(|q| !q.is_constant()).map(|q| q.monic()));
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| a.graded_cmp(b));
    basis
}
