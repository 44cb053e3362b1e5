mod common;

use biquad::calculus::{derived_generators, stated_generators, verify_calculus, Calculus, Form, Mask, OMEGA};
use biquad::ncpoly::NcPoly;
use biquad::presentation::{catalog, Presentation};
use biquad::scalars::Rational;
use biquad::smooth::{reparametrize, witness_shift};
use common::*;
use proptest::prelude::*;

/// The shifted presentation on which the calculus is built.
fn calculus(p: &Presentation) -> Calculus {
    let target = reparametrize(p, &witness_shift(p), &[r(1), r(1), r(1)]).unwrap();
    Calculus::new(&target).expect("smooth presentations carry automorphisms")
}

fn form(max_degree: usize) -> impl Strategy<Value = Form> {
    proptest::collection::vec((0usize..8, pbw_poly(max_degree)), 1..3).prop_map(|parts| {
        parts.into_iter().fold(Form::zero(), |acc, (m, f)| &acc + &Form::basis(m as Mask, f))
    })
}

fn homogeneous(f: &Form) -> Vec<(u32, Form)> {
    (0..=3).map(|k| (k, f.part(k))).filter(|(_, g)| !g.is_zero()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn projection_is_right_linear(p in smooth_presentation(), f in pbw_poly(2), g in pbw_poly(2), h in pbw_poly(2), c in rational()) {
        let cal = calculus(&p);
        let alg = cal.algebra();
        let w = &Form::basis(OMEGA, f.clone()) + &Form::basis(OMEGA, g.clone()).scale(&c);
        prop_assert_eq!(cal.pi_omega(&cal.right_mul(&w, &h)), alg.mul(&(&f + &g.scale(&c)), &h));
    }

    #[test]
    fn projection_twists_left_multiplication(p in smooth_presentation(), f in pbw_poly(2), g in pbw_poly(2)) {
        let cal = calculus(&p);
        let lhs = cal.pi_omega(&cal.left_mul(&f, &Form::basis(OMEGA, g.clone())));
        prop_assert_eq!(lhs, cal.algebra().mul(&cal.nu_omega(&f), &g));
    }

    #[test]
    fn top_twist_is_multiplicative(p in smooth_presentation(), f in pbw_poly(2), g in pbw_poly(2)) {
        let cal = calculus(&p);
        let alg = cal.algebra();
        prop_assert_eq!(cal.nu_omega(&alg.mul(&f, &g)), alg.mul(&cal.nu_omega(&f), &cal.nu_omega(&g)));
    }

    #[test]
    fn each_twist_respects_the_relations(p in smooth_presentation()) {
        let cal = calculus(&p);
        let pres = cal.presentation().clone();
        for i in 1..=3u8 {
            for (k, j) in [(2u8, 1u8), (3, 1), (3, 2)] {
                let rule = pres.rule(k, j);
                let (xk, xj) = (NcPoly::gen(k), NcPoly::gen(j));
                let mut rel = &(&xk * &xj) - &(&xj * &xk).scale(&rule.q);
                for m in 0..3u8 {
                    rel.add_term(biquad::ncpoly::Word::gen(m + 1), -rule.linear[m as usize].clone());
                }
                rel.add_term(biquad::ncpoly::Word::empty(), -rule.constant.clone());
                // nu_i applied letter by letter to the free relation
                let image = rel.terms().fold(NcPoly::zero(), |acc, (w, c)| {
                    let img = w.letters().iter().fold(NcPoly::one(), |a, &l| cal.algebra().mul(&a, &cal.automorphisms()[i as usize - 1].images[l as usize - 1]));
                    &acc + &img.scale(c)
                });
                prop_assert!(image.is_zero(), "nu{} on x{}x{}: {}", i, k, j, image);
            }
        }
    }

    #[test]
    fn wedge_is_associative(p in smooth_presentation(), a in form(1), b in form(1), c in form(1)) {
        let cal = calculus(&p);
        prop_assert_eq!(cal.wedge(&cal.wedge(&a, &b), &c), cal.wedge(&a, &cal.wedge(&b, &c)));
    }

    #[test]
    fn d_is_a_graded_derivation(p in smooth_presentation(), a in form(2), b in form(2)) {
        let cal = calculus(&p);
        for (ka, a) in homogeneous(&a) {
            let sign = if ka % 2 == 0 { Rational::one() } else { Rational::from(-1) };
            let lhs = cal.d(&cal.wedge(&a, &b));
            let mut rhs = cal.wedge(&cal.d(&a), &b);
            rhs.add_scaled(&cal.wedge(&a, &cal.d(&b)), &sign);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_squares_to_zero(p in smooth_presentation(), a in form(3)) {
        let cal = calculus(&p);
        prop_assert!(cal.d(&cal.d(&a)).is_zero());
    }

    #[test]
    fn forms_are_free_right_modules(p in smooth_presentation(), a in form(2)) {
        let cal = calculus(&p);
        let gens = stated_generators(cal.presentation().q());
        let one = Rational::one();
        let one_form = a.part(1);
        let mut back = Form::zero();
        for i in 0..3 {
            let h = cal.pi_omega(&cal.wedge(&gens.wbar2[i], &one_form));
            back.add_scaled(&cal.right_mul(&gens.w1[i], &h), &one);
        }
        prop_assert_eq!(back, one_form);
        let two_form = a.part(2);
        let mut back = Form::zero();
        for i in 0..3 {
            let h = cal.pi_omega(&cal.wedge(&gens.wbar1[i], &two_form));
            back.add_scaled(&cal.right_mul(&gens.w2[i], &h), &one);
        }
        prop_assert_eq!(back, two_form);
    }

    #[test]
    fn stated_generators_match_derived(p in smooth_presentation()) {
        let cal = calculus(&p);
        prop_assert_eq!(derived_generators(&cal), stated_generators(cal.presentation().q()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn verification_passes_on_random_smooth_presentations(p in smooth_presentation(), seed in any::<u64>()) {
        let report = verify_calculus(&p, 3, 20, seed).unwrap();
        prop_assert!(report.all_passed(), "{}", report);
    }
}

#[test]
fn verification_passes_on_smooth_catalog_entries() {
    for e in catalog() {
        let p = e.instantiate_default();
        if let Ok(report) = verify_calculus(&p, 3, 10, 1) {
            assert!(report.all_passed(), "{}\n{}", e.name, report);
        }
    }
}
