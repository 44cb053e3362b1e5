//! Independent oracles and proptest strategies shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use biquad::ncpoly::{Algebra, NcPoly, Word};
use biquad::presentation::Presentation;
use biquad::sample;
use biquad::scalars::Rational;
use proptest::prelude::*;

pub fn r(n: i64) -> Rational {
    Rational::from(n)
}

pub fn rational() -> impl Strategy<Value = Rational> + Clone {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> + Clone {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn triple<S: Strategy<Value = Rational> + Clone>(s: S) -> impl Strategy<Value = [Rational; 3]> {
    (s.clone(), s.clone(), s).prop_map(|(a, b, c)| [a, b, c])
}

pub fn uniform_presentation() -> impl Strategy<Value = Presentation> {
    (triple(nonzero_rational()), triple(rational()), triple(rational()), triple(rational()), triple(rational()))
        .prop_map(|(q, a0, a1, a2, b)| Presentation::new(q, [a0, a1, a2], b).unwrap())
}

/// Structured PBW presentations via the library sampler, driven by a
/// proptest-chosen seed.
pub fn pbw_presentation() -> impl Strategy<Value = Presentation> {
    any::<u64>().prop_map(|seed| sample::pbw_presentation(&mut sample::rng(seed)))
}

pub fn sparse_presentation() -> impl Strategy<Value = Presentation> {
    any::<u64>().prop_map(|seed| sample::sparse_presentation(&mut sample::rng(seed)))
}

pub fn smooth_presentation() -> impl Strategy<Value = Presentation> {
    any::<u64>().prop_map(|seed| sample::smooth_presentation(&mut sample::rng(seed)))
}

pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(1u8..=3, 0..=max_len).prop_map(Word::new)
}

pub fn ncpoly(max_len: usize) -> impl Strategy<Value = NcPoly> {
    proptest::collection::vec((word(max_len), rational()), 0..4).prop_map(NcPoly::from_terms)
}

/// PBW monomial polynomials (sorted words only).
pub fn pbw_poly(max_degree: usize) -> impl Strategy<Value = NcPoly> {
    proptest::collection::vec(((0..=max_degree, 0..=max_degree, 0..=max_degree), nonzero_rational()), 1..4)
        .prop_map(move |terms| {
            NcPoly::from_terms(terms.into_iter().filter(|((i, j, k), _)| i + j + k <= max_degree).map(
                |((i, j, k), c)| (Word::from_exponents([i, j, k]), c),
            ))
        })
}

/// Commutative polynomials in three variables, keyed by exponent vector.
pub type CommPoly = BTreeMap<[usize; 3], Rational>;

pub fn to_comm(p: &NcPoly) -> CommPoly {
    let mut out = CommPoly::new();
    for (w, c) in p.terms() {
        let mut e = [0; 3];
        for &l in w.letters() {
            e[l as usize - 1] += 1;
        }
        let slot = out.entry(e).or_default();
        *slot += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn comm_mul(a: &CommPoly, b: &CommPoly) -> CommPoly {
    let mut out = CommPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let slot = out.entry(e).or_default();
            *slot += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Hand-derived parameters of the presentation in `y_i` with
/// `x_i = t_i y_i + s_i`.
pub fn reparam_closed_form(p: &Presentation, s: &[Rational; 3], t: &[Rational; 3]) -> Presentation {
    let one = Rational::one();
    let [q1, q2, q3] = p.q();
    let [[a, b, c], [al, be, ga], [la, mu, nu]] = p.matrix();
    let [b1, b2, b3] = p.constants();
    let [s1, s2, s3] = s;
    let [t1, t2, t3] = t;
    let t12 = t1 * t2;
    let t13 = t1 * t3;
    let t23 = t2 * t3;
    let (m1, m2, m3) = (q1 - &one, q2 - &one, q3 - &one);
    let a_new = [
        [
            (a + &(s2 * &m1)) / t2,
            (b + &(s1 * &m1)) / t1,
            c * t3 / &t12,
        ],
        [
            (al + &(s3 * &m2)) / t3,
            be * t2 / &t13,
            (ga + &(s1 * &m2)) / t1,
        ],
        [
            la * t1 / &t23,
            (mu + &(s3 * &m3)) / t3,
            (nu + &(s2 * &m3)) / t2,
        ],
    ];
    let b_new = [
        (b1 + &(a * s1) + b * s2 + c * s3 + s1 * s2 * &m1) / &t12,
        (b2 + &(al * s1) + be * s2 + ga * s3 + s1 * s3 * &m2) / &t13,
        (b3 + &(la * s1) + mu * s2 + nu * s3 + s2 * s3 * &m3) / &t23,
    ];
    Presentation::new(p.q().clone(), a_new, b_new).unwrap()
}

/// With `Y_i = (x_i - s_i) / t_i` computed in the old algebra, the residuals
/// `Y_k Y_j - q Y_j Y_k - sum l'_m Y_m - c'` of the new relations.
pub fn substitution_residuals(old: &Presentation, new: &Presentation, s: &[Rational; 3], t: &[Rational; 3]) -> [NcPoly; 3] {
    let alg = Algebra::new(old);
    let y: Vec<NcPoly> = (0..3)
        .map(|i| {
            let inv = t[i].inv();
            let mut v = NcPoly::monomial(Word::gen(i as u8 + 1), inv.clone());
            v.add_term(Word::empty(), -(&s[i] * &inv));
            v
        })
        .collect();
    std::array::from_fn(|r| {
        let (k, j) = [(2usize, 1usize), (3, 1), (3, 2)][r];
        let rule = new.rule(k as u8, j as u8);
        let mut res = &alg.mul(&y[k - 1], &y[j - 1]) - &alg.mul(&y[j - 1], &y[k - 1]).scale(&rule.q);
        for (ym, l) in y.iter().zip(&rule.linear) {
            res.add_scaled(ym, &-l.clone());
        }
        res.add_term(Word::empty(), -rule.constant.clone());
        res
    })
}
