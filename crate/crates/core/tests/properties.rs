mod common;

use common::{random_poly, random_scalar, rng, FP};
use jacring::{
    enumerate_monomials, parse_poly, rank_transpose_agrees, reduce, ExactMatrix, FieldSpec, HyperPoly,
    JacobianRing, Monomial, Scalar,
};
use proptest::prelude::*;
use rand::Rng;

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(7)),
        Just(FieldSpec::Prime(65521)),
        Just(FieldSpec::Prime(4294967291)),
        Just(FieldSpec::Rationals),
    ]
}

fn arb_monomial(degree: u32) -> impl Strategy<Value = Monomial> {
    (0..enumerate_monomials(degree as i64).len()).prop_map(move |i| *enumerate_monomials(degree as i64).monomial(i))
}

/// Random matrix with roughly `density` percent nonzero entries.
fn random_matrix(field: FieldSpec, rows: usize, cols: usize, density: u32, seed: u64) -> ExactMatrix {
    let mut r = rng(seed);
    let entries: Vec<Scalar> = (0..rows * cols)
        .map(|_| if r.gen_range(0..100) < density { random_scalar(field, &mut r) } else { field.zero() })
        .collect();
    ExactMatrix::from_scalars(field, rows, cols, &entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_transpose_rank(
        field in arb_field(),
        rows in 0usize..12,
        cols in 0usize..12,
        density in 0u32..=100,
        seed in any::<u64>(),
    ) {
        let m = random_matrix(field, rows, cols, density, seed);
        prop_assert!(rank_transpose_agrees(&m));
        let res = reduce(&m);
        prop_assert!(res.rank <= rows.min(cols));
        prop_assert_eq!(res.pivot_cols.len(), res.rank);
        prop_assert!(res.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(reduce(&m), res);
    }

    #[test]
    fn block_diagonal_rank_is_additive(
        field in arb_field(),
        shape in (0usize..6, 0usize..6, 0usize..6, 0usize..6),
        seed in any::<u64>(),
    ) {
        let a = random_matrix(field, shape.0, shape.1, 60, seed);
        let b = random_matrix(field, shape.2, shape.3, 60, seed ^ 0x5555);
        let bd = ExactMatrix::block_diagonal(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(bd.rank(), a.rank() + b.rank());
    }

    #[test]
    fn euler_identity(field in arb_field(), d in 1u32..8, terms in 1usize..12, seed in any::<u64>()) {
        let f = random_poly(field, d, Some(terms), &mut rng(seed));
        let mut sum = HyperPoly::zero(field, d);
        for i in 0..5 {
            sum = sum.add(&f.partial_derivative(i).multiply(&Monomial::var(i))).unwrap();
        }
        prop_assert_eq!(sum, f.scale(&field.from_i64(d as i64)));
    }

    #[test]
    fn print_parse_round_trip(field in arb_field(), d in 0u32..9, terms in 0usize..15, seed in any::<u64>()) {
        let f = random_poly(field, d, Some(terms), &mut rng(seed));
        let text = f.to_string();
        let back = parse_poly(&text, field).unwrap();
        prop_assert_eq!(back.to_string(), text);
        if !f.is_zero() {
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn multiply_is_bilinear_and_degree_additive(
        field in arb_field(),
        d in 1u32..6,
        m in arb_monomial(3),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let f = random_poly(field, d, Some(6), &mut r);
        let g = random_poly(field, d, Some(6), &mut r);
        let (a, b) = (random_scalar(field, &mut r), random_scalar(field, &mut r));
        let lhs = f.scale(&a).add(&g.scale(&b)).unwrap().multiply(&m);
        let rhs = f.multiply(&m).scale(&a).add(&g.multiply(&m).scale(&b)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(f.multiply(&m).degree(), d + 3);
        prop_assert_eq!(f.multiply(&m).num_terms(), f.num_terms());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Reducing a vector, lifting the result onto the complement monomials
    /// and reducing again changes nothing.
    #[test]
    fn reduction_is_idempotent(d in 3u32..=4, k in 0i64..8, seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_poly(FP, d, None, &mut r);
        let mut ring = JacobianRing::new(&f).unwrap();
        let piece = ring.piece(k);
        let v: Vec<Scalar> = (0..jacring::dim_s(k)).map(|_| random_scalar(FP, &mut r)).collect();
        let once = piece.reduce(&v);
        let mut lifted = vec![FP.zero(); v.len()];
        let basis = enumerate_monomials(k);
        for (m, c) in piece.complement.iter().zip(&once) {
            lifted[basis.index_of(m).unwrap()] = c.clone();
        }
        prop_assert_eq!(piece.reduce(&lifted), once);
    }

    /// The Hilbert function does not depend on which route computed it.
    #[test]
    fn dimension_route_independent(d in 2u32..=4, terms in 3usize..20, seed in any::<u64>()) {
        let f = random_poly(FieldSpec::Prime(101), d, Some(terms), &mut rng(seed));
        let sigma = jacring::socle_degree(d);
        let mut a = JacobianRing::with_route(&f, jacring::Route::Direct).unwrap();
        let mut b = JacobianRing::with_route(&f, jacring::Route::Dual).unwrap();
        prop_assert_eq!(a.hilbert_function(0..=sigma + 1), b.hilbert_function(0..=sigma + 1));
    }
}
