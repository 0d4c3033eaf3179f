#![allow(dead_code)]

use jacring::{enumerate_monomials, FieldSpec, HyperPoly, Monomial, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FP: FieldSpec = FieldSpec::Prime(65521);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => Scalar::Mod(rng.gen_range(1..p)),
        FieldSpec::Rationals => {
            let v: i64 = rng.gen_range(1..=9);
            field.from_i64(if rng.gen() { v } else { -v })
        }
    }
}

/// Degree-d form with `terms` random support monomials (all of S^d if None).
pub fn random_poly(field: FieldSpec, d: u32, terms: Option<usize>, rng: &mut impl Rng) -> HyperPoly {
    let mut support: Vec<Monomial> = enumerate_monomials(d as i64).basis().to_vec();
    if let Some(n) = terms {
        support.shuffle(rng);
        support.truncate(n);
    }
    let terms: Vec<(Monomial, Scalar)> = support.into_iter().map(|m| (m, random_scalar(field, rng))).collect();
    HyperPoly::from_terms(field, d, terms).unwrap()
}
