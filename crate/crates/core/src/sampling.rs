//! Seeded random inputs for the property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Polynomial, RationalFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer polynomial of degree at most `max_deg`, coefficients in `[-bound, bound]`.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    Polynomial::from_ints(&coeffs)
}

pub fn random_nonzero_polynomial<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> Polynomial {
    loop {
        let p = random_polynomial(rng, max_deg, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Nonzero rational function with numerator and denominator of degree at most `max_deg`.
pub fn random_rational_function<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> RationalFunction {
    let num = random_nonzero_polynomial(rng, max_deg, bound);
    let den = random_nonzero_polynomial(rng, max_deg, bound);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `count` pairs of nonzero rational functions (degrees <= 8, coefficients in [-9, 9]).
pub fn random_pairs(seed: u64, count: usize) -> Vec<(RationalFunction, RationalFunction)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (random_rational_function(&mut r, 8, 9), random_rational_function(&mut r, 8, 9)))
        .collect()
}
