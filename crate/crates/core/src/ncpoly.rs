//! Words and noncommutative polynomials in `x1, x2, x3`, the degree-lex
//! order, and reduction to PBW normal form.
//!
//! A presentation gives three rules `x_k x_j -> q x_j x_k + l1 x1 + l2 x2 + l3 x3 + c`
//! for `k > j`. Every rule replaces a word by deglex-smaller words, so
//! reduction terminates and the irreducible words are the nondecreasing ones
//! `x1^i x2^j x3^k`.
//!
//! [`normal_form_traced`] implements the reference strategy literally: always
//! rewrite the deglex-greatest reducible word at its leftmost descent.
//! [`Algebra`] computes the same normal form letter by letter,
//! `NF(w x) = NF(NF(w) x)`, with memoised right multiplication by a generator.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::presentation::{Presentation, Rule};
use crate::scalars::Rational;

/// A word in the generators, letters in `1..=3`. The empty word is `1`.
///
/// Words are ordered degree-lexicographically: shorter words first, then
/// left-to-right by generator index with `x1 < x2 < x3`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid word `{input}`: {message}")]
pub struct WordParseError {
    pub input: String,
    pub message: String,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: u8) -> Self {
        Word::new(vec![i])
    }

    /// Panics if a letter is outside `1..=3`.
    pub fn new(letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|l| (1..=3).contains(l)), "generator index out of range: {:?}", letters);
        Word(letters)
    }

    /// The PBW monomial `x1^i x2^j x3^k`.
    pub fn from_exponents([i, j, k]: [usize; 3]) -> Self {
        let mut v = Vec::with_capacity(i + j + k);
        v.extend(std::iter::repeat_n(1, i));
        v.extend(std::iter::repeat_n(2, j));
        v.extend(std::iter::repeat_n(3, k));
        Word(v)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Nondecreasing words are exactly the PBW monomials.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Exponent triple of a PBW monomial, `None` if the word is not sorted.
    pub fn exponents(&self) -> Option<[usize; 3]> {
        if !self.is_sorted() {
            return None;
        }
        let mut e = [0; 3];
        for &l in &self.0 {
            e[(l - 1) as usize] += 1;
        }
        Some(e)
    }

    /// Position of the leftmost adjacent pair `x_k x_j` with `k > j`.
    pub fn leftmost_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Accepts `x3 x2 x1`, `x3*x2*x1`, `x1^2 x3`, and `1` for the empty word.
    pub fn parse(input: &str) -> Result<Word, WordParseError> {
        let err = |message: &str| WordParseError { input: input.to_string(), message: message.to_string() };
        let tokens: Vec<&str> = input.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()).collect();
        if tokens.is_empty() {
            return Err(err("empty word (use `1` for the identity)"));
        }
        if tokens == ["1"] {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in tokens {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (tok, 1),
            };
            let letter = match base {
                "x1" => 1,
                "x2" => 2,
                "x3" => 3,
                _ => return Err(err(&format!("unknown generator `{}`", base))),
            };
            letters.extend(std::iter::repeat_n(letter, exp));
        }
        Ok(Word(letters))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", l)?;
            if run > 1 {
                write!(f, "^{}", run)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

pub fn deglex_compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// An element of the free algebra `Q<x1,x2,x3>`. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        NcPoly::monomial(Word::empty(), c)
    }

    pub fn gen(i: u8) -> Self {
        NcPoly::monomial(Word::gen(i), Rational::one())
    }

    pub fn word(w: Word) -> Self {
        NcPoly::monomial(w, Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in ascending deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    /// True if every word of the support is a PBW monomial.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_sorted)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &NcPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect() }
    }

    /// Product in the free algebra (concatenation), no reduction.
    pub fn free_mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }

    /// Text form without spaces, for line-oriented machine output.
    pub fn to_compact_string(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", w)?;
            } else {
                write!(f, "{}*{}", mag, w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({})", self)
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from(-1));
        out
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

/// Free-algebra product.
impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.free_mul(rhs)
    }
}

/// The right-hand side of the rule for `x_k x_j` as a free polynomial.
fn rule_rhs(rule: &Rule, k: u8, j: u8) -> NcPoly {
    let mut rhs = NcPoly::monomial(Word::new(vec![j, k]), rule.q.clone());
    for m in 0..3 {
        rhs.add_term(Word::gen(m as u8 + 1), rule.linear[m].clone());
    }
    rhs.add_term(Word::empty(), rule.constant.clone());
    rhs
}

/// Normal form by the reference strategy, together with the sequence of words
/// rewritten. Each step rewrites the deglex-greatest reducible word of the
/// current support at its leftmost descent, so the trace is strictly
/// decreasing.
pub fn normal_form_traced(p: &NcPoly, pres: &Presentation) -> (NcPoly, Vec<Word>) {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    loop {
        let target = cur.terms.iter().rev().find(|(w, _)| !w.is_sorted()).map(|(w, c)| (w.clone(), c.clone()));
        let Some((w, c)) = target else { break };
        let i = w.leftmost_descent().expect("unsorted word has a descent");
        let (k, j) = (w.letters()[i], w.letters()[i + 1]);
        let rhs = rule_rhs(&pres.rule(k, j), k, j);
        let replacement = &(&NcPoly::word(w.slice(0, i)) * &rhs) * &NcPoly::word(w.slice(i + 2, w.len()));
        cur.terms.remove(&w);
        cur.add_scaled(&replacement, &c);
        trace.push(w);
    }
    (cur, trace)
}

/// A presentation together with a memo of right multiplications
/// `NF(u x_j)` for PBW monomials `u`.
///
/// Not `Sync`; build one per thread.
pub struct Algebra {
    pres: Presentation,
    rules: [Rule; 3],
    memo: RefCell<HashMap<(Word, u8), NcPoly>>,
}

impl Algebra {
    pub fn new(pres: &Presentation) -> Self {
        Algebra {
            pres: pres.clone(),
            rules: [pres.rule(2, 1), pres.rule(3, 1), pres.rule(3, 2)],
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn rule(&self, k: u8, j: u8) -> &Rule {
        &self.rules[Presentation::rule_index(k, j)]
    }

    /// `NF(u x_j)` for a PBW monomial `u`.
    fn right_gen_word(&self, u: &Word, j: u8) -> NcPoly {
        match u.last() {
            None => return NcPoly::gen(j),
            Some(k) if k <= j => {
                let mut v = u.0.clone();
                v.push(j);
                return NcPoly::word(Word(v));
            }
            _ => {}
        }
        if let Some(hit) = self.memo.borrow().get(&(u.clone(), j)) {
            return hit.clone();
        }
        let k = u.last().unwrap();
        let prefix = u.slice(0, u.len() - 1);
        let rule = self.rule(k, j).clone();
        // u' x_k x_j = q u' x_j x_k + sum_m l_m u' x_m + c u'
        let mut out = self.right_gen(&self.right_gen_word(&prefix, j), k).scale(&rule.q);
        for m in 0..3u8 {
            let l = &rule.linear[m as usize];
            if !l.is_zero() {
                out.add_scaled(&self.right_gen_word(&prefix, m + 1), l);
            }
        }
        out.add_term(prefix, rule.constant.clone());
        self.memo.borrow_mut().insert((u.clone(), j), out.clone());
        out
    }

    /// `NF(f x_j)` for `f` already in normal form.
    pub fn right_gen(&self, f: &NcPoly, j: u8) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(&self.right_gen_word(w, j), c);
        }
        out
    }

    /// `NF(f w)` for `f` already in normal form.
    pub fn right_word(&self, f: &NcPoly, w: &Word) -> NcPoly {
        w.letters().iter().fold(f.clone(), |acc, &j| self.right_gen(&acc, j))
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            if w.is_sorted() {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_scaled(&self.right_word(&NcPoly::one(), w), c);
            }
        }
        out
    }

    /// `NF(f g)`.
    pub fn mul(&self, f: &NcPoly, g: &NcPoly) -> NcPoly {
        let nf = self.normal_form(f);
        let mut out = NcPoly::zero();
        for (w, c) in g.terms() {
            out.add_scaled(&self.right_word(&nf, w), c);
        }
        out
    }

    pub fn pow(&self, f: &NcPoly, n: usize) -> NcPoly {
        (0..n).fold(NcPoly::one(), |acc, _| self.mul(&acc, f))
    }

    /// `NF(f x_k x_j) - NF(f * rhs)` for the rule `x_k x_j -> rhs`: the
    /// normal form of `f` times a defining relation.
    pub fn relation_image(&self, f: &NcPoly, k: u8, j: u8) -> NcPoly {
        let nf = self.normal_form(f);
        let lhs = self.right_gen(&self.right_gen(&nf, k), j);
        let rhs = self.mul(&nf, &rule_rhs(self.rule(k, j), k, j));
        &lhs - &rhs
    }
}

pub fn normal_form(p: &NcPoly, pres: &Presentation) -> NcPoly {
    Algebra::new(pres).normal_form(p)
}

pub fn mul_nf(p: &NcPoly, q: &NcPoly, pres: &Presentation) -> NcPoly {
    Algebra::new(pres).mul(p, q)
}

/// Number of PBW monomials of total degree `<= n`, `binomial(n + 3, 3)`.
pub fn pbw_count(n: usize) -> u64 {
    let n = n as u64;
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// All PBW monomials of total degree `<= n`, ascending.
pub fn pbw_monomials(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for d in 0..=n {
        for i in 0..=d {
            for j in 0..=d - i {
                out.push(Word::from_exponents([i, j, d - i - j]));
            }
        }
    }
    out.sort();
    out
}

/// Linear span of polynomials, kept in echelon form keyed by leading word.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    rows: BTreeMap<Word, NcPoly>,
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &NcPoly> {
        self.rows.values()
    }

    pub fn reduce(&self, v: &NcPoly) -> NcPoly {
        let mut v = v.clone();
        let mut bound: Option<Word> = None;
        loop {
            let hit = {
                let range = match &bound {
                    Some(b) => v.terms.range(..b.clone()),
                    None => v.terms.range(..),
                };
                range.rev().find(|(w, _)| self.rows.contains_key(*w)).map(|(w, c)| (w.clone(), c.clone()))
            };
            let Some((w, c)) = hit else { break };
            v.add_scaled(&self.rows[&w], &-c);
            bound = Some(w);
        }
        v
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: &NcPoly) -> bool {
        let r = self.reduce(v);
        let Some((w, c)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        self.rows.insert(w, r.scale(&c.inv()));
        true
    }

    pub fn contains(&self, v: &NcPoly) -> bool {
        self.reduce(v).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub degree: usize,
    /// `dim` of the span of PBW monomials of degree `<= degree` modulo the
    /// normal forms of relation multiples `u r v` of degree `<= degree`.
    pub count: u64,
    pub reference: u64,
}

/// Filtered dimension counts for `n = 0..=max_degree`.
///
/// Every word reduces to a combination of PBW monomials; the count subtracts
/// the rank of the normal forms of `u r v` (`r` a defining relation,
/// `|u| + |v| + 2 <= n`). For a confluent presentation that rank is zero and
/// the count is `binomial(n + 3, 3)`; overlap defects show up as a deficit.
pub fn growth_profile(pres: &Presentation, max_degree: usize) -> Vec<GrowthRow> {
    let alg = Algebra::new(pres);
    let mut span = SpanBasis::new();
    let mut rows = Vec::new();
    for n in 0..=max_degree {
        if n >= 2 {
            let mut fresh: Vec<NcPoly> = Vec::new();
            for row in span.rows() {
                for j in 1..=3 {
                    fresh.push(alg.right_gen(row, j));
                }
            }
            for u in pbw_monomials(n - 2).into_iter().filter(|u| u.len() == n - 2) {
                let u = NcPoly::word(u);
                for (k, j) in [(2, 1), (3, 1), (3, 2)] {
                    fresh.push(alg.relation_image(&u, k, j));
                }
            }
            for v in &fresh {
                span.insert(v);
            }
        }
        let reference = pbw_count(n);
        rows.push(GrowthRow { degree: n, count: reference - span.rank() as u64, reference });
    }
    rows
}
