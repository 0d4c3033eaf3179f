mod common;

use common::{random_poly, rng, FP};
use jacring::{
    aj_image_dimension, aj_image_dimension_in, coefficient_span, enumerate_monomials, euler_characteristic,
    green_shortcut_applies, hodge_numbers, multiplication_map, multiplication_map_shifted,
    rank_transpose_agrees, Error, HyperPoly, JacobianRing, WSpace,
};
use rand::seq::SliceRandom;

fn monomial_span(d: u32, picks: &[usize]) -> WSpace {
    let piece = enumerate_monomials(d as i64);
    let polys = picks.iter().map(|&i| HyperPoly::monomial(FP, *piece.monomial(i))).collect();
    WSpace::from_polys(FP, d, polys).unwrap()
}

#[test]
fn hodge_numbers_small_degrees() {
    let h = hodge_numbers(&HyperPoly::fermat(FP, 5)).unwrap();
    assert_eq!((h.h30, h.h21), (1, 101));
    let mut r = rng(1);
    for d in 3..=5 {
        let h = hodge_numbers(&random_poly(FP, d, None, &mut r)).unwrap();
        assert_eq!(h.euler_characteristic(), euler_characteristic(d), "d={d}");
    }
    let cubic = hodge_numbers(&HyperPoly::fermat(FP, 3)).unwrap();
    assert_eq!((cubic.h30, cubic.h21), (0, 5));
}

#[test]
fn fermat_sextic_report() {
    let report = aj_image_dimension(&HyperPoly::fermat(FP, 6), None).unwrap();
    assert_eq!((report.h30, report.h21), (5, 255));
    assert_eq!((report.w_dim, report.w_codim), (5, 205));
    assert_eq!((report.mu_rows, report.mu_cols, report.mu_rank), (255, 25, 0));
    assert_eq!(report.aj_image_dim, 255);
    assert!(!report.surjective);
    assert!(!report.shortcut_applies);
    assert_eq!(report.shortcut_consistent, None);
    assert!(report.degree_hypothesis_met);
}

#[test]
fn full_support_quintic_is_surjective() {
    let f = random_poly(FP, 5, None, &mut rng(8));
    let report = aj_image_dimension(&f, None).unwrap();
    assert_eq!((report.h30, report.h21), (1, 101));
    assert_eq!((report.mu_rows, report.mu_cols), (101, 126));
    assert_eq!(report.aj_image_dim, 0);
    assert!(report.surjective);
    assert!(!report.degree_hypothesis_met);
    assert!(!report.shortcut_applies);
}

#[test]
fn whole_space_onto_quotient() {
    let mut r = rng(4);
    for d in [3, 4, 5] {
        let f = random_poly(FP, d, None, &mut r);
        let everything = monomial_span(d, &(0..enumerate_monomials(d as i64).len()).collect::<Vec<_>>());
        let mu = multiplication_map_shifted(&everything, &f, 0).unwrap();
        let mut ring = JacobianRing::new(&f).unwrap();
        assert_eq!(mu.rank(), ring.dimension(d as i64), "d={d}");
    }
}

#[test]
fn enlarging_w_never_increases_the_image() {
    let f = random_poly(FP, 5, None, &mut rng(21));
    let mut ring = JacobianRing::new(&f).unwrap();
    for seed in 0..3 {
        let mut order: Vec<usize> = (0..126).collect();
        order.shuffle(&mut rng(seed));
        let mut last = usize::MAX;
        for size in [0, 1, 5, 20, 60, 100, 126] {
            let w = monomial_span(5, &order[..size]);
            let report = aj_image_dimension_in(&mut ring, Some(&w)).unwrap();
            assert!(report.aj_image_dim <= last, "size {size}: {} > {last}", report.aj_image_dim);
            last = report.aj_image_dim;
        }
        assert_eq!(last, 0);
    }
}

#[test]
fn shortcut_flags() {
    let full = random_poly(FP, 6, None, &mut rng(9));
    let w = coefficient_span(&full).unwrap();
    assert_eq!((w.dim(), w.codim()), (210, 0));
    assert!(green_shortcut_applies(&w, 6));

    let missing_one = monomial_span(6, &(1..210).collect::<Vec<_>>());
    assert_eq!(missing_one.codim(), 1);
    assert!(!green_shortcut_applies(&missing_one, 6));

    let quintic_full = monomial_span(5, &(0..126).collect::<Vec<_>>());
    assert!(!green_shortcut_applies(&quintic_full, 5));
}

#[test]
fn multiplication_map_rank_transpose() {
    let f = random_poly(FP, 5, None, &mut rng(12));
    let w = monomial_span(5, &[0, 3, 17, 40, 99]);
    let mu = multiplication_map(&w, &f).unwrap();
    assert!(rank_transpose_agrees(&mu));
}

#[test]
fn user_w_with_dependencies() {
    let f = random_poly(FP, 5, None, &mut rng(6));
    let a = random_poly(FP, 5, Some(30), &mut rng(60));
    let b = random_poly(FP, 5, Some(30), &mut rng(61));
    let sum = a.add(&b).unwrap();
    let w = WSpace::from_polys(FP, 5, vec![a, b, sum]).unwrap();
    assert_eq!(w.dim(), 2);
    let report = aj_image_dimension(&f, Some(&w)).unwrap();
    assert_eq!(report.mu_cols, 3);
    assert_eq!(report.aj_image_dim, 101 - report.mu_rank);
    assert_eq!(report.mu_rank, 2);
}

#[test]
fn preconditions() {
    let singular = jacring::parse_poly("z0^5 + z1^5", FP).unwrap();
    let w = coefficient_span(&singular).unwrap();
    assert!(matches!(multiplication_map(&w, &singular), Err(Error::NotSmooth { .. })));
    let quartic = HyperPoly::fermat(FP, 4);
    assert!(matches!(aj_image_dimension(&quartic, None), Err(Error::DegreeTooLow { degree: 4, min: 5 })));
    let wrong_degree = monomial_span(4, &[0]);
    assert!(matches!(
        aj_image_dimension(&HyperPoly::fermat(FP, 5), Some(&wrong_degree)),
        Err(Error::DegreeMismatch { .. })
    ));
}
