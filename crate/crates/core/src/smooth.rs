//! Differential-smoothness classification.
//!
//! A presentation with `c`, `beta` or `lambda` nonzero is not differentially
//! smooth. With all three zero it is smooth when
//!
//! ```text
//! inv1 = b1(q1 - 1) - a b       = 0
//! inv2 = b2(q2 - 1) - alpha gamma = 0
//! inv3 = b3(q3 - 1) - mu nu     = 0
//! mu_a = mu a                   = 0
//! ```
//!
//! and undecided otherwise. [`Mode::Shift`] also accepts presentations that
//! satisfy these conditions after a translation `x_i -> x_i + s_i` of the
//! generators: `inv1..inv3` are translation invariant, while `mu a` can be
//! removed whenever `q1 != 1` or `q3 != 1`.

use std::fmt;

use thiserror::Error;

use crate::ncpoly::{NcPoly, Word};
use crate::pbw::is_pbw;
use crate::presentation::{
    catalog, two_generator_catalog, CatalogEntry, ClaimedVerdict, Presentation, PresentationError, TwoGenEntry,
};
use crate::sample;
use crate::scalars::{Assignment, ParamSymbol, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Literal,
    Shift,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Literal => "literal",
            Mode::Shift => "shift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothError {
    #[error("not PBW")]
    NotPbw,
    #[error("scaling factor t{index} must be nonzero")]
    ZeroScale { index: usize },
    #[error("q must be nonzero")]
    ZeroQ,
}

/// A named condition and its value at a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub value: Rational,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `witness` is the first nonzero of `c`, `beta`, `lambda`.
    NotSmooth { witness: ParamSymbol, value: Rational },
    /// The conditions as satisfied after applying `shift`.
    Smooth { conditions: Vec<Condition>, shift: [Rational; 3] },
    Undecided { failing: Vec<Condition> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NotSmooth { .. } => "not_smooth",
            Verdict::Smooth { .. } => "smooth",
            Verdict::Undecided { .. } => "undecided",
        }
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth { .. })
    }

    /// Space-free witness text for line-oriented output.
    pub fn witness(&self) -> String {
        match self {
            Verdict::NotSmooth { witness, .. } => witness.name().to_string(),
            Verdict::Smooth { shift, .. } => format!("shift:{},{},{}", shift[0], shift[1], shift[2]),
            Verdict::Undecided { failing } => {
                failing.iter().map(Condition::to_string).collect::<Vec<_>>().join(",")
            }
        }
    }

    /// Whether this verdict matches a published verdict.
    pub fn agrees_with(&self, claimed: ClaimedVerdict) -> bool {
        matches!(
            (self, claimed),
            (Verdict::NotSmooth { .. }, ClaimedVerdict::NotSmooth)
                | (Verdict::Smooth { .. }, ClaimedVerdict::Smooth)
                | (Verdict::Undecided { .. }, ClaimedVerdict::Unknown)
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness={}", self.label(), self.witness())
    }
}

/// `[inv1, inv2, inv3, mu_a]` at `p`.
pub fn conditions(p: &Presentation) -> [Condition; 4] {
    let one = Rational::one();
    let [q1, q2, q3] = p.q();
    let [[a, b, _], [al, _, ga], [_, mu, nu]] = p.matrix();
    let [b1, b2, b3] = p.constants();
    [
        Condition { name: "inv1", value: b1 * &(q1 - &one) - a * b },
        Condition { name: "inv2", value: b2 * &(q2 - &one) - al * ga },
        Condition { name: "inv3", value: b3 * &(q3 - &one) - mu * nu },
        Condition { name: "mu_a", value: mu * a },
    ]
}

fn obstruction(p: &Presentation) -> Option<(ParamSymbol, Rational)> {
    [ParamSymbol::C, ParamSymbol::Beta, ParamSymbol::Lambda]
        .into_iter()
        .map(|s| (s, p.param(s).clone()))
        .find(|(_, v)| !v.is_zero())
}

/// The translation used by shift mode: clears `mu a` through `mu` when
/// `q3 != 1`, otherwise through `a` when `q1 != 1`, otherwise is zero.
pub fn witness_shift(p: &Presentation) -> [Rational; 3] {
    let one = Rational::one();
    let [q1, _, q3] = p.q();
    let a = p.param(ParamSymbol::A);
    let mu = p.param(ParamSymbol::Mu);
    let zero = Rational::zero;
    if (mu * a).is_zero() {
        [zero(), zero(), zero()]
    } else if q3 != &one {
        [zero(), zero(), -(mu / &(q3 - &one))]
    } else if q1 != &one {
        [zero(), -(a / &(q1 - &one)), zero()]
    } else {
        [zero(), zero(), zero()]
    }
}

pub fn classify(p: &Presentation, mode: Mode) -> Result<Verdict, SmoothError> {
    if !is_pbw(p) {
        return Err(SmoothError::NotPbw);
    }
    if let Some((witness, value)) = obstruction(p) {
        return Ok(Verdict::NotSmooth { witness, value });
    }
    let shift = match mode {
        Mode::Literal => [Rational::zero(), Rational::zero(), Rational::zero()],
        Mode::Shift => witness_shift(p),
    };
    let target = reparametrize(p, &shift, &[Rational::one(), Rational::one(), Rational::one()])?;
    let conds = conditions(&target);
    if conds.iter().all(|c| c.value.is_zero()) {
        Ok(Verdict::Smooth { conditions: conds.to_vec(), shift })
    } else {
        Ok(Verdict::Undecided { failing: conds.into_iter().filter(|c| !c.value.is_zero()).collect() })
    }
}

/// The presentation of the same algebra in generators `y_i` with
/// `x_i = t_i y_i + s_i`.
///
/// Each relation is substituted in the free algebra; the quadratic part
/// becomes `t_k t_j (y_k y_j - q y_j y_k)` and the new linear and constant
/// coefficients are read off after dividing by `t_k t_j`.
pub fn reparametrize(p: &Presentation, s: &[Rational; 3], t: &[Rational; 3]) -> Result<Presentation, SmoothError> {
    if let Some(i) = t.iter().position(Rational::is_zero) {
        return Err(SmoothError::ZeroScale { index: i + 1 });
    }
    let x: Vec<NcPoly> = (0..3)
        .map(|i| {
            let mut v = NcPoly::monomial(Word::gen(i as u8 + 1), t[i].clone());
            v.add_term(Word::empty(), s[i].clone());
            v
        })
        .collect();
    let mut values = Assignment::new();
    for (r, (k, j)) in [(2u8, 1u8), (3, 1), (3, 2)].into_iter().enumerate() {
        let rule = p.rule(k, j);
        let (xk, xj) = (&x[k as usize - 1], &x[j as usize - 1]);
        let mut rel = &(xk * xj) - &(xj * xk).scale(&rule.q);
        for (xm, l) in x.iter().zip(&rule.linear) {
            rel.add_scaled(xm, &-l.clone());
        }
        rel.add_term(Word::empty(), -rule.constant.clone());
        let scale = &t[k as usize - 1] * &t[j as usize - 1];
        let coeff = |w: Vec<u8>| rel.coeff(&Word::new(w));
        debug_assert_eq!(coeff(vec![k, j]), scale);
        let rhs = |c: Rational| -(c / &scale);
        values.insert(ParamSymbol::ALL[r], rule.q.clone());
        for m in 0..3 {
            values.insert(ParamSymbol::ALL[3 + 3 * r + m], rhs(coeff(vec![m as u8 + 1])));
        }
        values.insert(ParamSymbol::ALL[12 + r], rhs(coeff(vec![])));
    }
    Presentation::from_assignment(&values).map_err(|_: PresentationError| SmoothError::ZeroQ)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoGenCase {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoGenVerdict {
    Smooth(TwoGenCase),
    Unknown,
}

impl TwoGenVerdict {
    pub fn label(self) -> &'static str {
        match self {
            TwoGenVerdict::Smooth(_) => "smooth",
            TwoGenVerdict::Unknown => "unknown",
        }
    }

    pub fn witness(self) -> &'static str {
        match self {
            TwoGenVerdict::Smooth(TwoGenCase::A) => "case_a",
            TwoGenVerdict::Smooth(TwoGenCase::B) => "case_b",
            TwoGenVerdict::Smooth(TwoGenCase::C) => "case_c",
            TwoGenVerdict::Unknown => "none",
        }
    }

    pub fn agrees_with(self, claimed: ClaimedVerdict) -> bool {
        matches!(
            (self, claimed),
            (TwoGenVerdict::Smooth(_), ClaimedVerdict::Smooth) | (TwoGenVerdict::Unknown, ClaimedVerdict::Unknown)
        )
    }
}

/// `k[x1,x2; q,a,b,c]` seen as `k[t][x; sigma, delta]` with `sigma(t) = q t + b`
/// and `delta(t) = a t + c`.
pub fn classify_two_gen(q: &Rational, a: &Rational, b: &Rational, c: &Rational) -> Result<TwoGenVerdict, SmoothError> {
    if q.is_zero() {
        return Err(SmoothError::ZeroQ);
    }
    let verdict = if q.is_one() && b.is_zero() {
        TwoGenVerdict::Smooth(TwoGenCase::A)
    } else if q.is_one() && a.is_zero() {
        TwoGenVerdict::Smooth(TwoGenCase::B)
    } else if !q.is_one() && c * &(q - &Rational::one()) == a * b {
        TwoGenVerdict::Smooth(TwoGenCase::C)
    } else {
        TwoGenVerdict::Unknown
    };
    Ok(verdict)
}

#[derive(Debug, Clone)]
pub struct CatalogRow {
    pub entry: &'static CatalogEntry,
    pub presentation: Presentation,
    pub literal: Verdict,
    pub shift: Verdict,
}

impl CatalogRow {
    pub fn agree(&self) -> bool {
        self.shift.agrees_with(self.entry.claimed)
    }
}

#[derive(Debug, Clone)]
pub struct TwoGenRow {
    pub entry: &'static TwoGenEntry,
    pub params: [Rational; 4],
    pub verdict: TwoGenVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub smooth: usize,
    pub not_smooth: usize,
    pub undecided: usize,
    pub divergences: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "smooth={} not_smooth={} undecided={} divergences={}",
            self.smooth, self.not_smooth, self.undecided, self.divergences
        )
    }
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub seed: u64,
    pub rows: Vec<CatalogRow>,
    pub two_gen: Vec<TwoGenRow>,
}

impl CatalogReport {
    /// Counts over the three-generator rows, by shift-mode verdict.
    pub fn summary(&self) -> Summary {
        let count = |label: &str| self.rows.iter().filter(|r| r.shift.label() == label).count();
        Summary {
            smooth: count("smooth"),
            not_smooth: count("not_smooth"),
            undecided: count("undecided"),
            divergences: self.rows.iter().filter(|r| !r.agree()).count(),
        }
    }

    /// One `key=value` record per entry, then the summary.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "entry={} group={} computed={} claimed={} agree={} witness={} literal={}",
                    r.entry.name,
                    r.entry.group,
                    r.shift.label(),
                    r.entry.claimed,
                    r.agree(),
                    r.shift.witness(),
                    r.literal.label()
                )
            })
            .collect();
        out.extend(self.two_gen.iter().map(|r| {
            format!(
                "entry={} group=two_gen computed={} claimed={} agree={} witness={}",
                r.entry.name,
                r.verdict.label(),
                r.entry.claimed,
                r.verdict.agrees_with(r.entry.claimed),
                r.verdict.witness()
            )
        }));
        out.push(self.summary().to_string());
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<16} {:>5}  {:<11} {:<11} {:<11} {}\n",
            "entry", "group", "literal", "shift", "claimed", "witness"
        ));
        for r in &self.rows {
            let flag = if r.agree() { "" } else { "  <- differs from published" };
            out.push_str(&format!(
                "{:<16} {:>5}  {:<11} {:<11} {:<11} {}{}\n",
                r.entry.name,
                r.entry.group,
                r.literal.label(),
                r.shift.label(),
                r.entry.claimed.as_str(),
                r.shift.witness(),
                flag
            ));
        }
        out.push('\n');
        for r in &self.two_gen {
            let flag = if r.verdict.agrees_with(r.entry.claimed) { "" } else { "  <- differs" };
            out.push_str(&format!(
                "{:<16} q={} a={} b={} c={}  {} {}{}\n",
                r.entry.name,
                r.params[0],
                r.params[1],
                r.params[2],
                r.params[3],
                r.verdict.label(),
                r.verdict.witness(),
                flag
            ));
        }
        out.push_str(&format!("\n{}\n", self.summary()));
        out
    }
}

/// Random admissible values for the free symbols of `entry`.
fn random_instantiation(entry: &CatalogEntry, rng: &mut sample::Rng) -> Presentation {
    loop {
        let asg: Assignment = entry
            .free_symbols()
            .into_iter()
            .map(|s| (s, sample::rational(rng)))
            .collect();
        if let Ok(p) = entry.instantiate(&asg) {
            return p;
        }
    }
}

/// Classifies every catalog entry. Seed 0 uses the generic sample values;
/// any other seed draws the free symbols at random.
pub fn catalog_report(seed: u64) -> CatalogReport {
    let mut rng = sample::rng(seed);
    let rows = catalog()
        .iter()
        .map(|entry| {
            let presentation =
                if seed == 0 { entry.instantiate_default() } else { random_instantiation(entry, &mut rng) };
            let literal = classify(&presentation, Mode::Literal).expect("catalog entries are PBW");
            let shift = classify(&presentation, Mode::Shift).expect("catalog entries are PBW");
            CatalogRow { entry, presentation, literal, shift }
        })
        .collect();
    let two_gen = two_generator_catalog()
        .iter()
        .map(|entry| {
            let params = entry.params(None).expect("default q is admissible");
            let verdict = classify_two_gen(&params[0], &params[1], &params[2], &params[3]).expect("q is nonzero");
            TwoGenRow { entry, params, verdict }
        })
        .collect();
    CatalogReport { seed, rows, two_gen }
}
