//! The three-dimensional calculus `Omega^0 .. Omega^3` on a smooth presentation.
//!
//! `Omega^1` is the free right module on `dx1, dx2, dx3` with
//! `p dx_i = dx_i nu_i(p)`, where
//!
//! ```text
//! nu_1 = (x1,                 q1 x2 + a,          q2 x3 + alpha)
//! nu_2 = (q1^-1 x1 - b q1^-1, x2,                 q3 x3 + mu)
//! nu_3 = (q2^-1 x1 - gamma q2^-1, q3^-1 x2 - nu q3^-1, x3)
//! ```
//!
//! Higher forms use `dx_j ^ dx_i = -q_ij dx_i ^ dx_j` for `i < j`
//! (`q_12 = q1`, `q_13 = q2`, `q_23 = q3`) and `omega = dx1 ^ dx2 ^ dx3`.
//! `d` on functions is computed by the Leibniz rule on PBW monomials; the
//! closed-form partial derivatives are checked against it.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::ncpoly::{pbw_monomials, Algebra, NcPoly, SpanBasis, Word};
use crate::pbw::is_pbw;
use crate::presentation::Presentation;
use crate::sample;
use crate::scalars::Rational;
use crate::smooth::{classify, reparametrize, Mode, Verdict};

/// A ring endomorphism of `A`, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    pub images: [NcPoly; 3],
}

impl Endomorphism {
    pub fn identity() -> Self {
        Endomorphism { images: [NcPoly::gen(1), NcPoly::gen(2), NcPoly::gen(3)] }
    }

    /// `x_i -> scale_i x_i + offset_i`.
    pub fn affine(scale: [Rational; 3], offset: [Rational; 3]) -> Self {
        let images = std::array::from_fn(|i| {
            let mut p = NcPoly::monomial(Word::gen(i as u8 + 1), scale[i].clone());
            p.add_term(Word::empty(), offset[i].clone());
            p
        });
        Endomorphism { images }
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.images[0], self.images[1], self.images[2])
    }
}

/// Applies `nu` multiplicatively and reduces.
pub fn apply_endo(nu: &Endomorphism, p: &NcPoly, alg: &Algebra) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let img = w.letters().iter().fold(NcPoly::one(), |acc, &l| alg.mul(&acc, &nu.images[l as usize - 1]));
        out.add_scaled(&img, c);
    }
    out
}

/// The three ring endomorphisms `nu_1, nu_2, nu_3`.
pub fn automorphism_candidates(p: &Presentation) -> [Endomorphism; 3] {
    let [q1, q2, q3] = p.q();
    let [[_, b, _], [alpha, _, gamma], [_, mu, nu]] = p.matrix();
    let (one, zero) = (Rational::one, Rational::zero);
    let (i1, i2, i3) = (q1.inv(), q2.inv(), q3.inv());
    [
        Endomorphism::affine([one(), q1.clone(), q2.clone()], [zero(), p.matrix()[0][0].clone(), alpha.clone()]),
        Endomorphism::affine([i1.clone(), one(), q3.clone()], [-(b * &i1), zero(), mu.clone()]),
        Endomorphism::affine([i2.clone(), i3.clone(), one()], [-(gamma * &i2), -(nu * &i3), zero()]),
    ]
}

pub const RELATION_NAMES: [&str; 3] = ["x2x1", "x3x1", "x3x2"];

/// A defining relation whose image under some `nu_i` does not vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResidual {
    /// 1-based automorphism index.
    pub automorphism: usize,
    pub relation: &'static str,
    pub residual: NcPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("automorphisms do not extend: {}", describe(.residuals))]
pub struct AutomorphismFailure {
    pub residuals: Vec<RelationResidual>,
}

fn describe(rs: &[RelationResidual]) -> String {
    rs.iter()
        .map(|r| format!("nu{} on {} leaves {}", r.automorphism, r.relation, r.residual))
        .collect::<Vec<_>>()
        .join("; ")
}

/// `nu(x_k) nu(x_j) - q nu(x_j) nu(x_k) - sum l_m nu(x_m) - c` for each rule.
fn relation_residuals(nu: &Endomorphism, alg: &Algebra) -> [NcPoly; 3] {
    let p = alg.presentation();
    std::array::from_fn(|r| {
        let (k, j) = [(2u8, 1u8), (3, 1), (3, 2)][r];
        let rule = p.rule(k, j);
        let (nk, nj) = (&nu.images[k as usize - 1], &nu.images[j as usize - 1]);
        let mut res = &alg.mul(nk, nj) - &alg.mul(nj, nk).scale(&rule.q);
        for m in 0..3 {
            res.add_scaled(&nu.images[m], &-rule.linear[m].clone());
        }
        res.add_term(Word::empty(), -rule.constant.clone());
        res
    })
}

/// The three automorphisms, or the list of relations they fail to respect.
pub fn build_automorphisms(p: &Presentation) -> Result<[Endomorphism; 3], AutomorphismFailure> {
    let alg = Algebra::new(p);
    let nus = automorphism_candidates(p);
    let mut residuals = Vec::new();
    for (i, nu) in nus.iter().enumerate() {
        for (r, res) in relation_residuals(nu, &alg).into_iter().enumerate() {
            if !res.is_zero() {
                residuals.push(RelationResidual { automorphism: i + 1, relation: RELATION_NAMES[r], residual: res });
            }
        }
    }
    if residuals.is_empty() {
        Ok(nus)
    } else {
        Err(AutomorphismFailure { residuals })
    }
}

/// Bitmask of the generators in `dx_I`, bit `i - 1` for `dx_i`.
pub type Mask = usize;

pub const OMEGA: Mask = 0b111;
/// Degree-2 basis order: `dx1^dx2`, `dx1^dx3`, `dx2^dx3`.
pub const TWO_FORMS: [Mask; 3] = [0b011, 0b101, 0b110];

fn degree(mask: Mask) -> u32 {
    mask.count_ones()
}

fn mask_name(mask: Mask) -> String {
    if mask == 0 {
        return String::new();
    }
    (0..3).filter(|i| mask >> i & 1 == 1).map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("^")
}

/// `sum_I dx_I f_I` with right coefficients `f_I` in normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    coeffs: [NcPoly; 8],
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn function(f: NcPoly) -> Self {
        Form::basis(0, f)
    }

    /// `dx_I f`.
    pub fn basis(mask: Mask, f: NcPoly) -> Self {
        let mut out = Form::zero();
        out.coeffs[mask] = f;
        out
    }

    pub fn dx(i: u8) -> Self {
        Form::basis(1 << (i - 1), NcPoly::one())
    }

    pub fn omega() -> Self {
        Form::basis(OMEGA, NcPoly::one())
    }

    pub fn coeff(&self, mask: Mask) -> &NcPoly {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NcPoly::is_zero)
    }

    /// The part of degree `k`.
    pub fn part(&self, k: u32) -> Form {
        let mut out = Form::zero();
        for m in 0..8 {
            if degree(m) == k {
                out.coeffs[m] = self.coeffs[m].clone();
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Form, c: &Rational) {
        for m in 0..8 {
            self.coeffs[m].add_scaled(&other.coeffs[m], c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Form {
        Form { coeffs: std::array::from_fn(|m| self.coeffs[m].scale(c)) }
    }

    /// Nonzero coefficients as `(mask, coefficient)`.
    pub fn components(&self) -> impl Iterator<Item = (Mask, &NcPoly)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl std::ops::Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from(-1));
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components()
            .map(|(m, c)| if m == 0 { format!("({})", c) } else { format!("{}*({})", mask_name(m), c) })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({})", self)
    }
}

/// The calculus of a presentation whose automorphisms extend.
pub struct Calculus {
    alg: Algebra,
    nu: [Endomorphism; 3],
    memo: RefCell<HashMap<(usize, Word), NcPoly>>,
}

impl Calculus {
    pub fn new(p: &Presentation) -> Result<Self, AutomorphismFailure> {
        let nu = build_automorphisms(p)?;
        Ok(Calculus { alg: Algebra::new(p), nu, memo: RefCell::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn presentation(&self) -> &Presentation {
        self.alg.presentation()
    }

    pub fn automorphisms(&self) -> &[Endomorphism; 3] {
        &self.nu
    }

    fn nu_word(&self, i: usize, w: &Word) -> NcPoly {
        if w.is_empty() {
            return NcPoly::one();
        }
        if let Some(hit) = self.memo.borrow().get(&(i, w.clone())) {
            return hit.clone();
        }
        let prefix = self.nu_word(i, &w.slice(0, w.len() - 1));
        let out = self.alg.mul(&prefix, &self.nu[i].images[w.last().unwrap() as usize - 1]);
        self.memo.borrow_mut().insert((i, w.clone()), out.clone());
        out
    }

    /// `nu_i(p)`, 1-based `i`.
    pub fn nu(&self, i: u8, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.nu_word(i as usize - 1, w), c);
        }
        out
    }

    /// `nu_I(p)` with `p dx_I = dx_I nu_I(p)`.
    pub fn nu_mask(&self, mask: Mask, p: &NcPoly) -> NcPoly {
        (1..=3u8).filter(|i| mask >> (i - 1) & 1 == 1).fold(p.clone(), |acc, i| self.nu(i, &acc))
    }

    /// `nu_omega = nu_1 . nu_2 . nu_3`.
    pub fn nu_omega(&self, p: &NcPoly) -> NcPoly {
        self.nu(1, &self.nu(2, &self.nu(3, p)))
    }

    /// The coefficient of `omega` in a 3-form.
    pub fn pi_omega(&self, f: &Form) -> NcPoly {
        f.coeff(OMEGA).clone()
    }

    /// Sign and `q` factor of `dx_I ^ dx_J` relative to `dx_{I u J}`; zero if
    /// `I` and `J` meet.
    pub fn wedge_scalar(&self, i: Mask, j: Mask) -> Rational {
        if i & j != 0 {
            return Rational::zero();
        }
        let q = self.presentation().q();
        let qij = |a: usize, b: usize| match (a, b) {
            (0, 1) => &q[0],
            (0, 2) => &q[1],
            (1, 2) => &q[2],
            _ => unreachable!(),
        };
        let mut s = Rational::one();
        for a in 0..3 {
            for b in 0..a {
                // dx_a in I stands left of dx_b in J with a > b
                if i >> a & 1 == 1 && j >> b & 1 == 1 {
                    s *= &-qij(b, a).clone();
                }
            }
        }
        s
    }

    /// `(dx_I f) ^ (dx_J g) = s(I, J) dx_{I u J} nu_J(f) g`, extended bilinearly.
    pub fn wedge(&self, f: &Form, g: &Form) -> Form {
        let mut out = Form::zero();
        for (i, fc) in f.components() {
            for (j, gc) in g.components() {
                let s = self.wedge_scalar(i, j);
                if s.is_zero() {
                    continue;
                }
                let moved = self.alg.mul(&self.nu_mask(j, fc), gc);
                out.coeffs[i | j].add_scaled(&moved, &s);
            }
        }
        out
    }

    pub fn left_mul(&self, p: &NcPoly, f: &Form) -> Form {
        self.wedge(&Form::function(p.clone()), f)
    }

    pub fn right_mul(&self, f: &Form, p: &NcPoly) -> Form {
        Form { coeffs: std::array::from_fn(|m| self.alg.mul(&f.coeffs[m], p)) }
    }

    /// Right coefficients `[d_1 p, d_2 p, d_3 p]` of `dp` by the Leibniz rule:
    /// `d(w) = sum_m dx_{w_m} nu_{w_m}(w_1..w_{m-1}) w_{m+1}..w_n`.
    pub fn partials(&self, p: &NcPoly) -> [NcPoly; 3] {
        let p = self.alg.normal_form(p);
        let mut out: [NcPoly; 3] = Default::default();
        for (w, c) in p.terms() {
            for m in 0..w.len() {
                let l = w.letters()[m];
                let left = self.nu_word(l as usize - 1, &w.slice(0, m));
                let term = self.alg.mul(&left, &NcPoly::word(w.slice(m + 1, w.len())));
                out[l as usize - 1].add_scaled(&term, c);
            }
        }
        out
    }

    pub fn d0(&self, p: &NcPoly) -> Form {
        let [a, b, c] = self.partials(p);
        let mut out = Form::zero();
        out.coeffs[0b001] = a;
        out.coeffs[0b010] = b;
        out.coeffs[0b100] = c;
        out
    }

    /// `d(dx_I f) = (-1)^|I| dx_I ^ df`.
    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::zero();
        for (i, fc) in f.components() {
            let sign = if degree(i).is_multiple_of(2) { Rational::one() } else { Rational::from(-1) };
            let df = self.d0(fc);
            out.add_scaled(&self.wedge(&Form::basis(i, NcPoly::one()), &df), &sign);
        }
        out
    }

    /// Closed-form right coefficients of `d(x1^k x2^l x3^s)`:
    /// `k x1^(k-1) x2^l x3^s`, `l q1^-k (x1 - b)^k x2^(l-1) x3^s`,
    /// `s q2^-k q3^-l (x1 - gamma)^k (x2 - nu)^l x3^(s-1)`.
    pub fn closed_form_partials(&self, e: [usize; 3]) -> [NcPoly; 3] {
        let p = self.presentation();
        let [q1, q2, q3] = p.q();
        let [[_, b, _], [_, _, gamma], [_, _, nu]] = p.matrix();
        let [k, l, s] = e;
        let lin = |i: u8, off: &Rational| {
            let mut f = NcPoly::gen(i);
            f.add_term(Word::empty(), -off.clone());
            f
        };
        let mono = |i: usize, j: usize, t: usize| NcPoly::word(Word::from_exponents([i, j, t]));
        let alg = &self.alg;
        let d1 = if k == 0 { NcPoly::zero() } else { mono(k - 1, l, s).scale(&Rational::from(k as i64)) };
        let d2 = if l == 0 {
            NcPoly::zero()
        } else {
            let f = alg.mul(&alg.pow(&lin(1, b), k), &mono(0, l - 1, s));
            f.scale(&(Rational::from(l as i64) * q1.inv().pow(k as u32)))
        };
        let d3 = if s == 0 {
            NcPoly::zero()
        } else {
            let f = alg.mul(&alg.mul(&alg.pow(&lin(1, gamma), k), &alg.pow(&lin(2, nu), l)), &mono(0, 0, s - 1));
            f.scale(&(Rational::from(s as i64) * q2.inv().pow(k as u32) * q3.inv().pow(l as u32)))
        };
        [d1, d2, d3]
    }
}

/// The generator lists of the reconstruction identities
/// `sum_i w1_i pi(wbar2_i ^ f) = f` on 1-forms and
/// `sum_i w2_i pi(wbar1_i ^ g) = g` on 2-forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralGenerators {
    pub w1: [Form; 3],
    pub wbar1: [Form; 3],
    pub w2: [Form; 3],
    pub wbar2: [Form; 3],
}

/// `w1 = wbar1 = dx_i`; `w2_1 = dx2^dx3`, `w2_2 = -q1^-1 dx1^dx3`,
/// `w2_3 = q2^-1 q3^-1 dx1^dx2`; `wbar2_1 = q1^-1 q2^-1 dx2^dx3`,
/// `wbar2_2 = -q3^-1 dx1^dx3`, `wbar2_3 = dx1^dx2`.
pub fn stated_generators(q: &[Rational; 3]) -> IntegralGenerators {
    let [q1, q2, q3] = q;
    let f = |m: Mask, c: Rational| Form::basis(m, NcPoly::constant(c));
    let dx = [Form::dx(1), Form::dx(2), Form::dx(3)];
    IntegralGenerators {
        w1: dx.clone(),
        wbar1: dx,
        w2: [
            f(0b110, Rational::one()),
            f(0b101, -q1.inv()),
            f(0b011, q2.inv() * q3.inv()),
        ],
        wbar2: [
            f(0b110, q1.inv() * q2.inv()),
            f(0b101, -q3.inv()),
            f(0b011, Rational::one()),
        ],
    }
}

/// The same lists obtained by normalising the complementary basis forms
/// against `omega`: `wbar2_i ^ dx_i = omega` and `dx_i ^ w2_i`-duals.
pub fn derived_generators(cal: &Calculus) -> IntegralGenerators {
    let dx = [Form::dx(1), Form::dx(2), Form::dx(3)];
    let comp = |i: usize| OMEGA ^ (1 << i);
    let wbar2 = std::array::from_fn(|i| {
        let s = cal.wedge_scalar(comp(i), 1 << i);
        Form::basis(comp(i), NcPoly::constant(s.inv()))
    });
    let w2 = std::array::from_fn(|i| {
        let s = cal.wedge_scalar(1 << i, comp(i));
        Form::basis(comp(i), NcPoly::constant(s.inv()))
    });
    IntegralGenerators { w1: dx.clone(), wbar1: dx, w2, wbar2 }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} status={} detail={}",
            self.name,
            if self.passed { "pass" } else { "fail" },
            self.detail.replace(' ', "_")
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// The translation applied before building the calculus.
    pub shift: [Rational; 3],
    pub presentation: Presentation,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.checks.iter().map(CheckResult::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("precondition violated: not PBW")]
    NotPbw,
    #[error("precondition violated: classified {}", .0)]
    NotSmooth(Box<Verdict>),
    #[error("degree bound and sample count must be at least 1")]
    BadBounds,
}

pub const CHECK_NAMES: [&str; 7] =
    ["automorphisms", "relations", "d_squared", "connected", "leibniz", "partials", "integral_form"];

fn check(name: &'static str, failure: Option<String>, ok: String) -> CheckResult {
    match failure {
        Some(detail) => CheckResult { name, passed: false, detail },
        None => CheckResult { name, passed: true, detail: ok },
    }
}

fn check_automorphisms(p: &Presentation, mons: &[Word]) -> (CheckResult, Option<Calculus>) {
    let cal = match Calculus::new(p) {
        Ok(c) => c,
        Err(e) => return (check("automorphisms", Some(e.to_string()), String::new()), None),
    };
    let mut failure = None;
    'outer: for m in mons {
        let m = NcPoly::word(m.clone());
        for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
            let ij = cal.nu(i, &cal.nu(j, &m));
            let ji = cal.nu(j, &cal.nu(i, &m));
            if ij != ji {
                failure = Some(format!("nu{} and nu{} differ on {}", i, j, m));
                break 'outer;
            }
        }
    }
    let res = check("automorphisms", failure, format!("3 maps respect 3 relations and commute on {} monomials", mons.len()));
    (res, Some(cal))
}

/// `d` applied to each defining relation through the Leibniz rule on the
/// unreduced expression `x_k x_j - q x_j x_k - sum l_m x_m - c`.
fn check_relations(cal: &Calculus) -> CheckResult {
    let p = cal.presentation();
    let x = |i: u8| NcPoly::gen(i);
    // d(uv) = du v + u dv for generators u, v
    let d_prod = |u: u8, v: u8| &cal.right_mul(&Form::dx(u), &x(v)) + &cal.left_mul(&x(u), &Form::dx(v));
    let mut failure = None;
    for (r, (k, j)) in [(2u8, 1u8), (3, 1), (3, 2)].into_iter().enumerate() {
        let rule = p.rule(k, j);
        let mut form = d_prod(k, j);
        form.add_scaled(&d_prod(j, k), &-rule.q.clone());
        for m in 0..3u8 {
            form.add_scaled(&Form::dx(m + 1), &-rule.linear[m as usize].clone());
        }
        if !form.is_zero() {
            failure = Some(format!("d({}) = {}", RELATION_NAMES[r], form));
            break;
        }
    }
    check("relations", failure, "3 relations".into())
}

fn check_d_squared(cal: &Calculus, mons: &[Word]) -> CheckResult {
    let failure = mons.iter().find_map(|m| {
        let dd = cal.d(&cal.d0(&NcPoly::word(m.clone())));
        (!dd.is_zero()).then(|| format!("dd({}) = {}", m, dd))
    });
    let mut res = check("d_squared", failure, format!("{} monomials", mons.len()));
    if res.passed {
        // also on 1- and 2-forms with monomial coefficients
        for mask in [0b001, 0b010, 0b100, 0b011, 0b101, 0b110] {
            for m in mons {
                let f = Form::basis(mask, NcPoly::word(m.clone()));
                let dd = cal.d(&cal.d(&f));
                if !dd.is_zero() {
                    res = check("d_squared", Some(format!("dd({}) = {}", f, dd)), String::new());
                    return res;
                }
            }
        }
    }
    res
}

/// Encodes a 1-form as a polynomial `sum_i x_i f_i` so that the echelon
/// routine can compute ranks.
fn encode_one_form(f: &Form) -> NcPoly {
    let mut out = NcPoly::zero();
    for i in 0..3u8 {
        out.add_scaled(&(&NcPoly::gen(i + 1) * f.coeff(1 << i)), &Rational::one());
    }
    out
}

fn check_connected(cal: &Calculus, mons: &[Word]) -> CheckResult {
    let mut span = SpanBasis::new();
    for m in mons {
        span.insert(&encode_one_form(&cal.d0(&NcPoly::word(m.clone()))));
    }
    let kernel = mons.len() - span.rank();
    let d1 = cal.d0(&NcPoly::one());
    let failure = if kernel != 1 || !d1.is_zero() {
        Some(format!("kernel dimension {} on {} monomials", kernel, mons.len()))
    } else {
        None
    };
    check("connected", failure, format!("kernel is scalars on {} monomials", mons.len()))
}

fn check_leibniz(cal: &Calculus, n: usize, k: usize, rng: &mut sample::Rng) -> CheckResult {
    let alg = cal.algebra();
    let mut failure = None;
    for _ in 0..k {
        let f = sample::ncpoly(rng, n);
        let g = sample::ncpoly(rng, n);
        let lhs = cal.d0(&alg.mul(&f, &g));
        let rhs = &cal.right_mul(&cal.d0(&f), &g) + &cal.left_mul(&f, &cal.d0(&g));
        if lhs != rhs {
            failure = Some(format!("f = {}, g = {}", f, g));
            break;
        }
    }
    check("leibniz", failure, format!("{} pairs", k))
}

fn check_partials(cal: &Calculus, mons: &[Word]) -> CheckResult {
    let failure = mons.iter().find_map(|m| {
        let closed = cal.closed_form_partials(m.exponents().expect("PBW monomial"));
        let leibniz = cal.partials(&NcPoly::word(m.clone()));
        (0..3).find(|&i| closed[i] != leibniz[i]).map(|i| {
            format!("d{} of {}: closed form {} vs {}", i + 1, m, closed[i], leibniz[i])
        })
    });
    check("partials", failure, format!("{} monomials", mons.len()))
}

fn check_integral_form(cal: &Calculus, n: usize) -> CheckResult {
    let stated = stated_generators(cal.presentation().q());
    if derived_generators(cal) != stated {
        return check("integral_form", Some("derived generators differ from the stated lists".into()), String::new());
    }
    let mons = pbw_monomials(n.min(3));
    let mut failure = None;
    let mut count = 0;
    'outer: for m in &mons {
        let coeff = NcPoly::word(m.clone());
        for mask in [0b001, 0b010, 0b100] {
            let f = Form::basis(mask, coeff.clone());
            let mut sum = Form::zero();
            for i in 0..3 {
                let h = cal.pi_omega(&cal.wedge(&stated.wbar2[i], &f));
                sum.add_scaled(&cal.right_mul(&stated.w1[i], &h), &Rational::one());
            }
            count += 1;
            if sum != f {
                failure = Some(format!("1-form {} reconstructs as {}", f, sum));
                break 'outer;
            }
        }
        for mask in TWO_FORMS {
            let g = Form::basis(mask, coeff.clone());
            let mut sum = Form::zero();
            for i in 0..3 {
                let h = cal.pi_omega(&cal.wedge(&stated.wbar1[i], &g));
                sum.add_scaled(&cal.right_mul(&stated.w2[i], &h), &Rational::one());
            }
            count += 1;
            if sum != g {
                failure = Some(format!("2-form {} reconstructs as {}", g, sum));
                break 'outer;
            }
        }
    }
    check("integral_form", failure, format!("{} basis forms", count))
}

/// Builds the calculus on `p` (after the shift-mode witness translation) and
/// runs the seven checks with degree bound `n` and `k` random Leibniz pairs.
pub fn verify_calculus(p: &Presentation, n: usize, k: usize, seed: u64) -> Result<VerificationReport, CalculusError> {
    if n == 0 || k == 0 {
        return Err(CalculusError::BadBounds);
    }
    if !is_pbw(p) {
        return Err(CalculusError::NotPbw);
    }
    let verdict = classify(p, Mode::Shift).map_err(|_| CalculusError::NotPbw)?;
    let shift = match &verdict {
        Verdict::Smooth { shift, .. } => shift.clone(),
        _ => return Err(CalculusError::NotSmooth(Box::new(verdict))),
    };
    let ones = [Rational::one(), Rational::one(), Rational::one()];
    let target = reparametrize(p, &shift, &ones).expect("unit scaling");
    let mons = pbw_monomials(n);
    let mut rng = sample::rng(seed);
    let (auto, cal) = check_automorphisms(&target, &mons);
    let mut checks = vec![auto];
    match cal {
        Some(cal) => {
            checks.push(check_relations(&cal));
            checks.push(check_d_squared(&cal, &mons));
            checks.push(check_connected(&cal, &mons));
            checks.push(check_leibniz(&cal, n, k, &mut rng));
            checks.push(check_partials(&cal, &mons));
            checks.push(check_integral_form(&cal, n));
        }
        None => {
            for name in &CHECK_NAMES[1..] {
                checks.push(CheckResult { name, passed: false, detail: "no calculus".into() });
            }
        }
    }
    Ok(VerificationReport { shift, presentation: target, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::find_entry;
    use crate::scalars::ParamSymbol;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(s: &str) -> String {
        s.to_string()
    }

    fn a1_sample() -> Presentation {
        find_entry("a1")
            .unwrap()
            .instantiate_with(&[(ParamSymbol::Mu, r(3))])
            .unwrap()
            .with(ParamSymbol::Alpha, r(1))
            .unwrap()
    }

    #[test]
    fn automorphisms_of_a1() {
        let nu = build_automorphisms(&a1_sample()).unwrap();
        assert_eq!(nu[0].to_string(), "(x1, 2*x2, x3 + 1)");
        assert_eq!(nu[1].to_string(), "(1/2*x1, x2, x3 + 3)");
        assert_eq!(nu[2].to_string(), "(x1, x2, x3)");
        let id = build_automorphisms(&Presentation::commutative()).unwrap();
        assert!(id.iter().all(|n| *n == Endomorphism::identity()));
    }

    #[test]
    fn b2_fails_on_first_relation() {
        let b2 = find_entry("b2").unwrap().instantiate_default();
        let err = build_automorphisms(&b2).unwrap_err();
        let first = err.residuals.iter().find(|r| r.automorphism == 1 && r.relation == "x2x1").unwrap();
        assert_eq!(first.residual, NcPoly::one());
    }

    #[test]
    fn apply_examples() {
        let p = a1_sample();
        let alg = Algebra::new(&p);
        let nu = build_automorphisms(&p).unwrap();
        let x2x3 = NcPoly::word(Word::parse("x2 x3").unwrap());
        assert_eq!(apply_endo(&nu[0], &x2x3, &alg).to_string(), poly("2*x2*x3 + 2*x2"));
        let x3 = NcPoly::gen(3);
        let a = apply_endo(&nu[1], &apply_endo(&nu[0], &x3, &alg), &alg);
        let b = apply_endo(&nu[0], &apply_endo(&nu[1], &x3, &alg), &alg);
        assert_eq!(a, b);
        assert_eq!(apply_endo(&Endomorphism::identity(), &x2x3, &alg), x2x3);
    }

    #[test]
    fn d_examples() {
        let p = Presentation::from_ints([2, 1, 1], [[0, 3, 0], [0; 3], [0; 3]], [0; 3]).unwrap();
        let cal = Calculus::new(&p).unwrap();
        assert!(cal.d0(&NcPoly::one()).is_zero());
        let d = cal.d0(&NcPoly::word(Word::parse("x1 x2").unwrap()));
        assert_eq!(d.coeff(0b001).to_string(), "x2");
        // q1^-1 (x1 - b) with b = 3
        assert_eq!(d.coeff(0b010).to_string(), "1/2*x1 - 3/2");
        assert_eq!(d.coeff(0b100).to_string(), "0");
    }

    #[test]
    fn wedge_examples() {
        let p = Presentation::from_ints([2, 3, 5], [[0; 3]; 3], [0; 3]).unwrap();
        let cal = Calculus::new(&p).unwrap();
        assert!(cal.wedge(&Form::dx(1), &Form::dx(1)).is_zero());
        assert_eq!(cal.wedge(&Form::dx(2), &Form::dx(1)), Form::basis(0b011, NcPoly::constant(r(-2))));
        let f = cal.wedge(&cal.wedge(&Form::dx(3), &Form::dx(1)), &Form::dx(2));
        assert_eq!(f, Form::basis(OMEGA, NcPoly::constant(r(15))));
        assert_eq!(cal.pi_omega(&f), NcPoly::constant(r(15)));
        assert_eq!(cal.pi_omega(&Form::basis(OMEGA, NcPoly::gen(1))), NcPoly::gen(1));
        let ahead = cal.wedge(&Form::dx(3), &cal.wedge(&Form::dx(1), &Form::dx(2)));
        assert_eq!(ahead, f);
    }

    #[test]
    fn d_higher_examples() {
        let cal = Calculus::new(&a1_sample()).unwrap();
        assert!(cal.d(&Form::basis(0b001, NcPoly::gen(1))).is_zero());
        assert_eq!(cal.d(&Form::basis(0b001, NcPoly::gen(2))), Form::basis(0b011, NcPoly::constant(r(-1))));
        let x2x1 = NcPoly::word(Word::parse("x2 x1").unwrap());
        assert!(cal.d(&cal.d0(&x2x1)).is_zero());
    }

    #[test]
    fn nu_omega_identity() {
        let cal = Calculus::new(&a1_sample()).unwrap();
        let x2 = NcPoly::gen(2);
        let lhs = cal.left_mul(&x2, &Form::omega());
        let rhs = cal.right_mul(&Form::omega(), &cal.nu_omega(&x2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generator_lists_agree() {
        let p = Presentation::from_ints([2, 3, 5], [[0; 3]; 3], [0; 3]).unwrap();
        let cal = Calculus::new(&p).unwrap();
        assert_eq!(derived_generators(&cal), stated_generators(p.q()));
    }

    #[test]
    fn verify_examples() {
        let rep = verify_calculus(&Presentation::commutative(), 4, 50, 0).unwrap();
        assert!(rep.all_passed(), "{}", rep);
        let rep = verify_calculus(&a1_sample(), 4, 50, 0).unwrap();
        assert!(rep.all_passed(), "{}", rep);
        assert_eq!(rep.checks.len(), 7);
        let sl2 = find_entry("u_sl2").unwrap().instantiate_default();
        assert!(matches!(verify_calculus(&sl2, 4, 50, 0), Err(CalculusError::NotSmooth(_))));
    }
}
