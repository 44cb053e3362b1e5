mod common;

use biquad::ncpoly::{growth_profile, mul_nf, normal_form, normal_form_traced, pbw_count, Algebra, NcPoly, Word};
use biquad::pbw::is_pbw;
use biquad::presentation::{catalog, Presentation};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_trace_strictly_decreases(p in sparse_presentation(), f in ncpoly(6)) {
        let (nf, trace) = normal_form_traced(&f, &p);
        prop_assert!(nf.is_normal());
        for pair in trace.windows(2) {
            prop_assert!(pair[0] > pair[1], "{:?} then {:?}", pair[0], pair[1]);
        }
    }

    #[test]
    fn fast_reduction_matches_reference_strategy(p in prop_oneof![uniform_presentation(), sparse_presentation()], f in ncpoly(5)) {
        let (reference, _) = normal_form_traced(&f, &p);
        prop_assert_eq!(normal_form(&f, &p), reference);
    }

    #[test]
    fn normal_form_is_idempotent(p in sparse_presentation(), f in ncpoly(6)) {
        let alg = Algebra::new(&p);
        let once = alg.normal_form(&f);
        prop_assert_eq!(alg.normal_form(&once), once);
    }

    #[test]
    fn normal_form_is_linear(p in sparse_presentation(), f in ncpoly(5), g in ncpoly(5), c in rational()) {
        let alg = Algebra::new(&p);
        prop_assert_eq!(alg.normal_form(&(&f + &g)), &alg.normal_form(&f) + &alg.normal_form(&g));
        prop_assert_eq!(alg.normal_form(&f.scale(&c)), alg.normal_form(&f).scale(&c));
    }

    #[test]
    fn deglex_is_length_then_lex(u in word(5), v in word(5)) {
        let expected = u.len().cmp(&v.len()).then(u.letters().cmp(v.letters()));
        prop_assert_eq!(u.cmp(&v), expected);
    }

    #[test]
    fn word_round_trips_through_text(u in word(8)) {
        prop_assert_eq!(Word::parse(&u.to_string()).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commutative_product_matches_polynomial_multiplication(f in pbw_poly(4), g in pbw_poly(4)) {
        let prod = mul_nf(&f, &g, &Presentation::commutative());
        prop_assert!(prod.is_normal());
        prop_assert_eq!(to_comm(&prod), comm_mul(&to_comm(&f), &to_comm(&g)));
    }

    #[test]
    fn growth_is_binomial_on_pbw_presentations(p in pbw_presentation()) {
        for row in growth_profile(&p, 5) {
            prop_assert_eq!(row.count, pbw_count(row.degree));
        }
    }
}

#[test]
fn growth_detects_every_non_pbw_sample() {
    // a deficit appears by degree 4 whenever the overlap fails to resolve
    let mut rng = biquad::sample::rng(5);
    let mut seen = 0;
    while seen < 30 {
        let p = biquad::sample::sparse_presentation(&mut rng);
        if is_pbw(&p) {
            continue;
        }
        seen += 1;
        assert!(growth_profile(&p, 4).iter().any(|r| r.count < r.reference), "{:?}", p);
    }
}

#[test]
fn catalog_entries_reduce_the_overlap_word() {
    let x321 = NcPoly::word(Word::parse("x3 x2 x1").unwrap());
    for e in catalog() {
        let p = e.instantiate_default();
        let nf = normal_form(&x321, &p);
        assert!(nf.is_normal(), "{}", e.name);
        assert_eq!(nf.leading().unwrap().0, &Word::parse("x1 x2 x3").unwrap());
    }
}

#[test]
fn pbw_count_matches_enumeration() {
    for n in 0..=10 {
        let count = (0..=n).flat_map(|i| (0..=n - i).map(move |j| n - i - j + 1)).sum::<usize>();
        assert_eq!(pbw_count(n), count as u64);
        assert_eq!(biquad::ncpoly::pbw_monomials(n).len(), count);
    }
}
